#include "expsum/fourier.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace expsum {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr Complex imag_unit{0.0, 1.0};

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i)
        f *= i;
    return f;
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i)
        b = b * (n - k + i) / i;
    return b;
}

Complex cpow_int(Complex z, int p) {
    Complex r = 1.0;
    for (int i = 0; i < p; ++i)
        r *= z;
    return r;
}

// sum_{l=0}^{m} u^l / l!  (Horner form)
Complex exp_partial_sum(Complex u, int m) {
    Complex s = 1.0;
    for (int l = m; l >= 1; --l)
        s = 1.0 + u / static_cast<double>(l) * s;
    return s;
}

// -i lambda P rounded to the nearest integer; true when within
// periodicity_tol of it.
bool near_integer(Complex c, long& n) {
    const double r = std::round(c.real());
    n = static_cast<long>(r);
    return std::abs(c - Complex{r, 0.0}) <= periodicity_tol;
}

void require_period(double period, const char* who) {
    if (!(period > 0.0))
        throw std::invalid_argument(std::string(who) + ": period must be > 0");
}

} // namespace

Complex coeff_monomial_exp(Complex gamma, int m, Complex lambda, double period,
                           long k) {
    require_period(period, "coeff_monomial_exp");
    if (m < 0)
        throw std::invalid_argument("coeff_monomial_exp: m must be >= 0");

    const Complex c = -imag_unit * lambda * period; // -i lambda P
    long n = 0;
    if (near_integer(c, n)) {
        if (k == n)
            return gamma * std::pow(period, m) / (m + 1.0);
        if (m == 0)
            return Complex{0.0, 0.0};
        const Complex v = two_pi * imag_unit * static_cast<double>(k - n);
        const Complex s = exp_partial_sum(v, m) - 1.0; // l = 1..m
        return -gamma * std::pow(period, m) * factorial(m) / cpow_int(v, m + 1) *
               s;
    }
    const Complex u = two_pi * imag_unit * (static_cast<double>(k) - c);
    const Complex es = std::exp(two_pi * lambda * period);
    const Complex s = exp_partial_sum(u, m);
    return gamma * std::pow(period, m) * factorial(m) / cpow_int(u, m + 1) *
           (1.0 - es * s);
}

Complex coeff_proper(Complex gamma, Complex lambda, double period, long k) {
    require_period(period, "coeff_proper");
    const Complex c = -imag_unit * lambda * period;
    long n = 0;
    if (near_integer(c, n))
        return k == n ? gamma : Complex{0.0, 0.0};
    const Complex u = two_pi * imag_unit * (static_cast<double>(k) - c);
    const Complex es = std::exp(two_pi * lambda * period);
    return gamma / u * (1.0 - es);
}

Complex coeff_real_proper(double gamma, double alpha, double period, long k) {
    require_period(period, "coeff_real_proper");
    if (alpha == 0.0)
        throw std::invalid_argument("coeff_real_proper: alpha must be nonzero");
    // e^{pi alpha P} sinh(pi alpha P) = (e^{2 pi alpha P} - 1) / 2
    const double g = 0.5 * std::expm1(two_pi * alpha * period);
    const Complex num =
        gamma * Complex{period * alpha, static_cast<double>(k)} * g;
    const double den = std::numbers::pi * (alpha * alpha * period * period +
                                           static_cast<double>(k) *
                                               static_cast<double>(k));
    return num / den;
}

Complex coeff_model(const ExponentialSumModel& model, double period, long k) {
    require_period(period, "coeff_model");
    Complex sum = 0.0;
    for (const auto& term : model.terms)
        for (std::size_t m = 0; m < term.gammas.size(); ++m)
            sum += coeff_monomial_exp(term.gammas[m], static_cast<int>(m),
                                      term.lambda, period, k);
    return sum;
}

Complex eval_partial_fraction(const ConfluentPartialFraction& pf, Complex z) {
    Complex sum = 0.0;
    for (const auto& cluster : pf.clusters) {
        const Complex inv = 1.0 / (z - cluster.pole);
        Complex p = inv;
        for (const auto& a : cluster.coefficients) {
            sum += a * p;
            p *= inv;
        }
    }
    return sum;
}

ConfluentPartialFraction confluent_params(const ExponentialSumModel& model,
                                          double period) {
    require_period(period, "confluent_params");
    ConfluentPartialFraction pf;
    for (const auto& term : model.terms) {
        const int nj = term.degree();
        const Complex c = -imag_unit * term.lambda * period;
        long n = 0;
        PartialFractionCluster cluster;
        if (near_integer(c, n)) {
            cluster.pole = Complex{static_cast<double>(n), 0.0};
            cluster.periodic = true;
            for (int l = 0; l < nj; ++l) {
                Complex tail = 0.0;
                for (int m = l + 1; m <= nj; ++m)
                    tail += std::pow(period, m) * binomial(m, l) *
                            term.gammas[static_cast<std::size_t>(m)];
                cluster.coefficients.push_back(
                    -factorial(l) / cpow_int(two_pi * imag_unit, l + 1) * tail);
            }
        } else {
            cluster.pole = c;
            const Complex es = std::exp(two_pi * term.lambda * period);
            for (int l = 0; l <= nj; ++l) {
                Complex tail = 0.0;
                for (int m = l + 1; m <= nj; ++m)
                    tail += std::pow(period, m) * binomial(m, l) *
                            term.gammas[static_cast<std::size_t>(m)];
                cluster.coefficients.push_back(
                    factorial(l) / cpow_int(two_pi * imag_unit, l + 1) *
                    (term.gammas[static_cast<std::size_t>(l)] *
                         std::pow(period, l) * (1.0 - es) -
                     es * tail));
            }
        }
        pf.clusters.push_back(std::move(cluster));
    }
    return pf;
}

Complex coeff_quadrature_oracle(const ExponentialSumModel& model,
                                double period, long k, double tol) {
    require_period(period, "coeff_quadrature_oracle");
    if (!(tol > 0.0))
        throw std::invalid_argument("coeff_quadrature_oracle: tol must be > 0");

    // enough panels to resolve the e^{-2 pi i k t / P} oscillation
    const long panels = std::max<long>(16, 4 * std::labs(k));
    const double h = period / static_cast<double>(panels);
    const double freq = two_pi * static_cast<double>(k) / period;
    auto integrand = [&](double t) {
        return evaluate(model, t) * std::exp(Complex{0.0, -freq * t});
    };

    Complex total = 0.0;
    double err_total = 0.0;
    for (long p = 0; p < panels; ++p) {
        const double a = static_cast<double>(p) * h;
        const double b = (p + 1 == panels) ? period
                                           : static_cast<double>(p + 1) * h;
        double err = 0.0;
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            integrand, a, b, 12, 1e-14, &err);
        err_total += err;
    }
    if (err_total > tol * period)
        throw std::runtime_error(
            "coeff_quadrature_oracle: quadrature did not reach the requested "
            "tolerance");
    return total / period;
}

FourierDataset make_dataset(const ExponentialSumModel& model, double period,
                            long k_first, long k_last) {
    require_period(period, "make_dataset");
    if (k_last < k_first)
        throw std::invalid_argument("make_dataset: empty index range");
    FourierDataset data;
    data.period = period;
    data.entries.reserve(static_cast<std::size_t>(k_last - k_first + 1));
    for (long k = k_first; k <= k_last; ++k)
        data.entries.push_back(FourierEntry{k, coeff_model(model, period, k)});
    return data;
}

} // namespace expsum
