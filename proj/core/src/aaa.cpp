#include "expsum/aaa.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>

namespace expsum {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double finite_abs(Complex z) {
    const double a = std::abs(z);
    return std::isfinite(a) ? a : inf;
}

} // namespace

Complex bary_eval(const BarycentricRational& r, Complex z) {
    const std::size_t n = r.support.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (z == r.support[j]) {
            if (r.weights[j] != Complex{0.0})
                return r.values[j];
            // zero weight: the support point is not interpolated, take the
            // limit with index j excluded from both sums
            Complex num = 0.0, den = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == j)
                    continue;
                const Complex c = r.weights[i] / (z - r.support[i]);
                num += c * r.values[i];
                den += c;
            }
            return num / den;
        }
    }
    Complex num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Complex c = r.weights[j] / (z - r.support[j]);
        num += c * r.values[j];
        den += c;
    }
    return num / den;
}

AaaApproximant aaa_fit(std::span<const Complex> points,
                       std::span<const Complex> values, double tol, int jmax) {
    const auto L = static_cast<Eigen::Index>(points.size());
    if (points.size() != values.size())
        throw std::invalid_argument("aaa_fit: points/values size mismatch");
    if (L < 3)
        throw std::invalid_argument("aaa_fit: need at least 3 points");
    if (!(tol > 0.0))
        throw std::invalid_argument("aaa_fit: tol must be > 0");
    if (jmax < 1)
        throw std::invalid_argument("aaa_fit: jmax must be >= 1");
    // keep at least one non-support point for the residual check
    const int max_steps = static_cast<int>(
        std::min<Eigen::Index>(jmax, L - 2));

    // seed with the two values of largest modulus, earliest index on ties
    Eigen::Index i1 = 0, i2 = -1;
    for (Eigen::Index i = 1; i < L; ++i)
        if (finite_abs(values[i]) > finite_abs(values[i1]))
            i1 = i;
    for (Eigen::Index i = 0; i < L; ++i) {
        if (i == i1)
            continue;
        if (i2 < 0 || finite_abs(values[i]) > finite_abs(values[i2]))
            i2 = i;
    }

    std::vector<Eigen::Index> chosen{i1, i2};
    std::vector<Eigen::Index> remaining;
    remaining.reserve(points.size());
    for (Eigen::Index i = 0; i < L; ++i)
        if (i != i1 && i != i2)
            remaining.push_back(i);

    // termination is measured against the data scale: an absolute
    // threshold below the unit-last-place of large coefficients could
    // never be met
    double fscale = 0.0;
    for (const auto& v : values)
        fscale = std::max(fscale, finite_abs(v));
    const double stop_threshold = tol * fscale;

    AaaDiagnostics diag;
    Eigen::VectorXcd w;
    Eigen::Index next_pick = -1;

    for (int j = 1; j <= max_steps; ++j) {
        if (j > 1) {
            chosen.push_back(next_pick);
            remaining.erase(
                std::find(remaining.begin(), remaining.end(), next_pick));
        }
        const auto cols = static_cast<Eigen::Index>(chosen.size());
        const auto rows = static_cast<Eigen::Index>(remaining.size());

        Eigen::VectorXcd f_s(cols);
        for (Eigen::Index c = 0; c < cols; ++c)
            f_s(c) = values[chosen[c]];

        Eigen::MatrixXcd loewner(rows, cols), cauchy(rows, cols);
        for (Eigen::Index r = 0; r < rows; ++r) {
            const Complex z = points[remaining[r]];
            const Complex fz = values[remaining[r]];
            for (Eigen::Index c = 0; c < cols; ++c) {
                const Complex d = 1.0 / (z - points[chosen[c]]);
                cauchy(r, c) = d;
                loewner(r, c) = (fz - f_s(c)) * d;
            }
        }

        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(loewner, Eigen::ComputeFullV);
        const auto& v_full = svd.matrixV();
        const Eigen::VectorXcd v1 = v_full.col(cols - 1);
        const Eigen::VectorXcd v2 = v_full.col(cols - 2);
        const Complex a1 = (v1.transpose() * f_s)(0);
        const Complex a2 = (v2.transpose() * f_s)(0);
        const double combo_norm =
            std::sqrt(std::norm(a1) + std::norm(a2));
        if (combo_norm <= 1e-14 * f_s.norm()) {
            // both projections vanish: the side condition cannot pin the
            // combination, keep the smallest singular vector
            w = v1;
            diag.weight_fallback = true;
        } else {
            Eigen::VectorXcd raw = a2 * v1 - a1 * v2;
            w = raw / raw.norm();
        }

        const Eigen::VectorXcd p = cauchy * w.cwiseProduct(f_s);
        const Eigen::VectorXcd q = cauchy * w;

        double residual = 0.0;
        Eigen::Index arg = 0;
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double e = finite_abs(p(r) / q(r) - values[remaining[r]]);
            if (e > residual) {
                residual = e;
                arg = r;
            }
        }
        diag.iterations = j;
        diag.final_residual = residual;
        diag.residual_history.push_back(residual);
        if (residual < stop_threshold || residual == 0.0) {
            diag.converged = true;
            break;
        }
        next_pick = remaining[arg];
    }

    BarycentricRational rational;
    rational.support.reserve(chosen.size());
    rational.values.reserve(chosen.size());
    rational.weights.reserve(chosen.size());
    for (std::size_t c = 0; c < chosen.size(); ++c) {
        rational.support.push_back(points[chosen[c]]);
        rational.values.push_back(values[chosen[c]]);
        rational.weights.push_back(w(static_cast<Eigen::Index>(c)));
    }
    return AaaApproximant{std::move(rational), std::move(diag)};
}

PruneResult prune_zero_weights(const BarycentricRational& r, double zero_tol) {
    if (!(zero_tol >= 0.0))
        throw std::invalid_argument("prune_zero_weights: zero_tol must be >= 0");
    double wmax = 0.0;
    for (const auto& w : r.weights)
        wmax = std::max(wmax, std::abs(w));
    const double threshold = zero_tol * wmax;

    PruneResult result;
    double norm_sq = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        if (std::abs(r.weights[j]) <= threshold) {
            result.removed.push_back(r.support[j]);
        } else {
            result.rational.support.push_back(r.support[j]);
            result.rational.values.push_back(r.values[j]);
            result.rational.weights.push_back(r.weights[j]);
            norm_sq += std::norm(r.weights[j]);
        }
    }
    if (result.rational.support.empty())
        throw std::runtime_error(
            "prune_zero_weights: all weights fall below the threshold");
    if (result.removed.empty())
        return PruneResult{r, {}};
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& w : result.rational.weights)
        w *= scale;
    return result;
}

} // namespace expsum
