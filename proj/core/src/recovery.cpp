#include "expsum/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

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

void validate_dataset(const FourierDataset& data, const char* who) {
    if (!(data.period > 0.0))
        throw std::invalid_argument(std::string(who) + ": period must be > 0");
    std::set<long> seen;
    for (const auto& entry : data.entries)
        if (!seen.insert(entry.k).second)
            throw std::invalid_argument(std::string(who) +
                                        ": duplicate index k=" +
                                        std::to_string(entry.k));
}

// re-evaluates the recovered model's coefficients against the data; any
// recovery that went wrong fails to reproduce its own input
void verify_against_input(RecoveryReport& report, const FourierDataset& data) {
    double worst = 0.0;
    for (const auto& entry : data.entries) {
        const Complex predicted =
            coeff_model(report.model, data.period, entry.k);
        const double mismatch =
            std::abs(predicted - entry.c) / (1.0 + std::abs(entry.c));
        if (!std::isfinite(mismatch)) {
            worst = std::numeric_limits<double>::infinity();
            break;
        }
        worst = std::max(worst, mismatch);
    }
    report.verification_residual = worst;
    if (!(worst <= 1e-8))
        report.warnings.push_back(
            "recovered model does not reproduce the input coefficients "
            "(relative mismatch " +
            std::to_string(worst) + ")");
}

void require_converged(const AaaDiagnostics& diag, std::size_t n_points) {
    if (!diag.converged) {
        std::ostringstream msg;
        msg << "recovery: AAA did not converge after " << diag.iterations
            << " iterations over " << n_points
            << " coefficients (residual " << diag.final_residual
            << "); insufficient coefficients or too tight a tolerance";
        throw RecoveryError(msg.str());
    }
}

} // namespace

Complex frequency_from_pole(Complex pole, double period) {
    if (!(period > 0.0))
        throw std::invalid_argument("frequency_from_pole: period must be > 0");
    return imag_unit * pole / period;
}

std::vector<Complex> gammas_from_cluster(std::span<const Complex> coeffs,
                                         Complex pole, double period) {
    if (coeffs.empty())
        throw std::invalid_argument("gammas_from_cluster: empty coefficients");
    if (!(period > 0.0))
        throw std::invalid_argument("gammas_from_cluster: period must be > 0");
    const int n = static_cast<int>(coeffs.size()) - 1;
    const Complex e = std::exp(two_pi * imag_unit * pole);
    if (std::abs(1.0 - e) < 1e-12)
        throw RecoveryError("gammas_from_cluster: near-periodic pole leaked "
                            "into the non-periodic back-substitution");
    std::vector<Complex> gamma(static_cast<std::size_t>(n) + 1);
    for (int m = n; m >= 0; --m) {
        Complex tail = 0.0;
        for (int l = m + 1; l <= n; ++l)
            tail += binomial(l, m) * std::pow(period, l) *
                    gamma[static_cast<std::size_t>(l)];
        gamma[static_cast<std::size_t>(m)] =
            (cpow_int(two_pi * imag_unit, m + 1) / factorial(m) *
                 coeffs[static_cast<std::size_t>(m)] +
             e * tail) /
            ((1.0 - e) * std::pow(period, m));
    }
    return gamma;
}

std::vector<Complex>
gammas_from_periodic_cluster(std::span<const Complex> coeffs,
                             Complex corrected_coeff, double period) {
    if (!(period > 0.0))
        throw std::invalid_argument(
            "gammas_from_periodic_cluster: period must be > 0");
    const int n = static_cast<int>(coeffs.size());
    std::vector<Complex> gamma(static_cast<std::size_t>(n) + 1, Complex{0.0});
    for (int m = n - 1; m >= 0; --m) {
        Complex tail = 0.0;
        for (int l = m + 2; l <= n; ++l)
            tail += binomial(l, m) * std::pow(period, l) *
                    gamma[static_cast<std::size_t>(l)];
        gamma[static_cast<std::size_t>(m) + 1] =
            -(cpow_int(two_pi * imag_unit, m + 1) / factorial(m) *
                  coeffs[static_cast<std::size_t>(m)] +
              tail) /
            (std::pow(period, m + 1) * (m + 1));
    }
    Complex head = 0.0;
    for (int l = 1; l <= n; ++l)
        head += std::pow(period, l) / (l + 1.0) *
                gamma[static_cast<std::size_t>(l)];
    gamma[0] = corrected_coeff - head;
    return gamma;
}

RecoveryReport recover(const FourierDataset& data, const RecoveryOptions& opts,
                       const std::optional<ExponentialSumModel>& reference) {
    if (opts.mode == RecoveryMode::real_proper)
        return recover_real_proper(data, opts, reference);
    validate_dataset(data, "recover");

    std::vector<Complex> points, values;
    points.reserve(data.entries.size());
    values.reserve(data.entries.size());
    std::map<long, Complex> by_index;
    for (const auto& entry : data.entries) {
        points.emplace_back(static_cast<double>(entry.k), 0.0);
        values.push_back(entry.c);
        by_index[entry.k] = entry.c;
    }

    RecoveryReport report;

    // Step 1: rational fit and spike detection through vanished weights
    auto fit = aaa_fit(points, values, opts.tol, opts.jmax);
    report.aaa = fit.diagnostics;
    require_converged(fit.diagnostics, points.size());
    if (fit.diagnostics.weight_fallback)
        report.warnings.push_back(
            "aaa weight combination degenerated; used the smallest singular "
            "vector alone");

    auto pruned = prune_zero_weights(fit.rational, opts.zero_weight_tol);
    std::set<long> sigma;
    for (const auto& z : pruned.removed)
        sigma.insert(std::lround(z.real()));

    // Step 2: poles, clustering, classification. A signal with nothing
    // but periodic spikes leaves fewer than two support points behind and
    // has no poles at all.
    std::vector<Complex> raw;
    if (pruned.rational.size() >= 2)
        raw = poles(pruned.rational);
    PoleClusterSet cluster_set;
    cluster_set.merge_tol = opts.merge_tol;
    if (opts.mode == RecoveryMode::proper) {
        cluster_set.raw_poles = raw;
        cluster_set.merge_tol = 0.0;
        for (const auto& rho : raw)
            cluster_set.clusters.push_back(PoleCluster{rho, 1});
    } else if (!raw.empty()) {
        cluster_set = cluster_poles(raw, opts.merge_tol);
    }
    report.clusters = cluster_set;

    std::vector<int> periodic_index(cluster_set.clusters.size(), 0);
    for (std::size_t i = 0; i < cluster_set.clusters.size(); ++i) {
        const Complex center = cluster_set.clusters[i].center;
        if (is_periodic_pole(center) && opts.mode != RecoveryMode::proper) {
            periodic_index[i] = 1;
            sigma.insert(std::lround(center.real()));
        } else if (std::abs(center -
                            Complex{std::round(center.real()), 0.0}) <= 1e-3) {
            std::ostringstream msg;
            msg << "cluster near (" << center.real() << ", " << center.imag()
                << ") is ambiguously close to an integer; treated as "
                   "non-periodic";
            report.warnings.push_back(msg.str());
        }
    }
    // nearly touching clusters usually mean a multiple pole was split
    for (std::size_t i = 0; i < cluster_set.clusters.size(); ++i)
        for (std::size_t j = i + 1; j < cluster_set.clusters.size(); ++j)
            if (std::abs(cluster_set.clusters[i].center -
                         cluster_set.clusters[j].center) <
                3.0 * opts.merge_tol)
                report.warnings.push_back(
                    "two pole clusters lie within 3x merge_tol of each other; "
                    "a multiple pole may have been split");

    for (const long k : sigma) {
        if (!by_index.contains(k)) {
            std::ostringstream msg;
            msg << "recover: periodic index k=" << k
                << " is not present in the dataset";
            throw RecoveryError(msg.str());
        }
    }

    // Step 2b: confluent residues over the retained support points
    std::vector<Complex> exclude;
    exclude.reserve(sigma.size());
    for (const long k : sigma)
        exclude.emplace_back(static_cast<double>(k), 0.0);
    ConfluentSolveResult solved;
    if (!cluster_set.clusters.empty())
        solved = solve_residues_confluent(pruned.rational.support,
                                          pruned.rational.values, cluster_set,
                                          exclude);
    report.condition_estimate = solved.condition_estimate;
    if (solved.condition_estimate > 1e12)
        report.warnings.push_back(
            "confluent interpolation system is ill-conditioned (estimate > "
            "1e12)");

    // evaluates every recovered cluster except `skip` at z
    const auto& pf_clusters = solved.fraction.clusters;
    auto eval_others = [&](Complex z, std::size_t skip) {
        Complex sum = 0.0;
        for (std::size_t i = 0; i < pf_clusters.size(); ++i) {
            if (i == skip)
                continue;
            const Complex inv = 1.0 / (z - pf_clusters[i].pole);
            Complex p = inv;
            for (const auto& a : pf_clusters[i].coefficients) {
                sum += a * p;
                p *= inv;
            }
        }
        return sum;
    };

    // Steps 3 and 4: parameter back-maps
    ExponentialSumModel model;
    std::set<long> claimed;
    for (std::size_t i = 0; i < pf_clusters.size(); ++i) {
        const Complex center = pf_clusters[i].pole;
        ExpTerm term;
        term.lambda = frequency_from_pole(center, data.period);
        if (periodic_index[i]) {
            const long kj = std::lround(center.real());
            claimed.insert(kj);
            const Complex corrected =
                by_index.at(kj) -
                eval_others(Complex{static_cast<double>(kj), 0.0}, i);
            term.gammas = gammas_from_periodic_cluster(
                pf_clusters[i].coefficients, corrected, data.period);
        } else {
            term.gammas = gammas_from_cluster(pf_clusters[i].coefficients,
                                              center, data.period);
        }
        model.terms.push_back(std::move(term));
    }
    // pruned spikes that carry no pole: proper periodic terms
    for (const long k : sigma) {
        if (claimed.contains(k))
            continue;
        const Complex z{static_cast<double>(k), 0.0};
        ExpTerm term;
        term.lambda = frequency_from_pole(z, data.period);
        term.gammas = {by_index.at(k) - eval_others(z, pf_clusters.size())};
        model.terms.push_back(std::move(term));
    }

    report.model = canonicalize(model);
    report.sigma.assign(sigma.begin(), sigma.end());
    verify_against_input(report, data);
    if (reference)
        report.reference_distance =
            model_distance(canonicalize(*reference), report.model);
    return report;
}

RecoveryReport recover_real_proper(
    const FourierDataset& data, const RecoveryOptions& opts,
    const std::optional<ExponentialSumModel>& reference) {
    validate_dataset(data, "recover_real_proper");
    for (const auto& entry : data.entries)
        if (entry.k < 1)
            throw std::invalid_argument(
                "recover_real_proper: all indices must satisfy k >= 1");

    // modified coefficients over squared abscissae
    std::vector<Complex> points, values;
    points.reserve(data.entries.size());
    values.reserve(data.entries.size());
    for (const auto& entry : data.entries) {
        const double k = static_cast<double>(entry.k);
        points.emplace_back(k * k, 0.0);
        values.emplace_back(entry.c.real(), entry.c.imag() / k);
    }

    RecoveryReport report;
    auto fit = aaa_fit(points, values, opts.tol, opts.jmax);
    report.aaa = fit.diagnostics;
    require_converged(fit.diagnostics, points.size());
    if (fit.diagnostics.weight_fallback)
        report.warnings.push_back(
            "aaa weight combination degenerated; used the smallest singular "
            "vector alone");

    std::vector<Complex> raw = poles(fit.rational);
    // all poles are simple here, so Newton refinement on the denominator
    // is safe and sharpens them
    for (auto& rho : raw)
        rho = refine_denominator_zero(fit.rational, rho);
    report.clusters = cluster_poles(raw, opts.merge_tol);

    // the poles -C_j are real for a real proper sum; drop the spurious
    // imaginary parts before the residue solve, where they would leak the
    // A coefficients into the much smaller B ones
    std::vector<Complex> real_poles;
    real_poles.reserve(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) {
        if (std::abs(raw[j].imag()) > 1e-8 * (1.0 + std::abs(raw[j]))) {
            std::ostringstream msg;
            msg << "recover_real_proper: pole " << j
                << " keeps a non-negligible imaginary part ("
                << raw[j].imag() << ")";
            throw RecoveryError(msg.str());
        }
        real_poles.emplace_back(raw[j].real(), 0.0);
    }

    double condition = 1.0;
    const std::vector<Complex> residues =
        solve_residues_simple(fit.rational, real_poles, &condition);
    report.condition_estimate = condition;
    if (condition > 1e12)
        report.warnings.push_back(
            "simple-pole interpolation system is ill-conditioned (estimate > "
            "1e12)");

    ExponentialSumModel model;
    for (std::size_t j = 0; j < real_poles.size(); ++j) {
        const double a = residues[j].real();
        const double b = residues[j].imag();
        if (std::abs(b) <= 1e-12 * std::abs(a))
            throw RecoveryError(
                "recover_real_proper: vanishing B coefficient, the rate "
                "alpha is undefined");
        const double alpha = a / (b * data.period);
        const double gamma =
            two_pi * b / std::expm1(two_pi * alpha * data.period);
        model.terms.push_back(
            ExpTerm{Complex{alpha, 0.0}, {Complex{gamma, 0.0}}});
    }

    report.model = canonicalize(model);
    verify_against_input(report, data);
    if (reference)
        report.reference_distance =
            model_distance(canonicalize(*reference), report.model);
    return report;
}

} // namespace expsum
