#include "expsum/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace expsum {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

bool lambda_less(const ExpTerm& a, const ExpTerm& b) {
    if (a.lambda.real() != b.lambda.real())
        return a.lambda.real() < b.lambda.real();
    return a.lambda.imag() < b.lambda.imag();
}

// One union-find pass merging terms whose frequencies are within tol.
std::vector<ExpTerm> merge_terms(const std::vector<ExpTerm>& terms, double tol,
                                 bool& merged_any) {
    const std::size_t n = terms.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };

    merged_any = false;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(terms[i].lambda - terms[j].lambda) <= tol) {
                const auto ri = find(i), rj = find(j);
                if (ri != rj) {
                    parent[rj] = ri;
                    merged_any = true;
                }
            }
        }
    }
    if (!merged_any)
        return terms;

    std::vector<ExpTerm> merged;
    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const auto root = find(i);
        if (done[root])
            continue;
        done[root] = true;
        ExpTerm out;
        Complex lambda_sum = 0.0;
        int members = 0;
        for (std::size_t j = i; j < n; ++j) {
            if (find(j) != root)
                continue;
            lambda_sum += terms[j].lambda;
            ++members;
            if (terms[j].gammas.size() > out.gammas.size())
                out.gammas.resize(terms[j].gammas.size(), Complex{0.0});
            for (std::size_t m = 0; m < terms[j].gammas.size(); ++m)
                out.gammas[m] += terms[j].gammas[m];
        }
        out.lambda = lambda_sum / static_cast<double>(members);
        merged.push_back(std::move(out));
    }
    return merged;
}

} // namespace

int ExponentialSumModel::order() const {
    int n = 0;
    for (const auto& term : terms)
        n += 1 + term.degree();
    return n;
}

Complex evaluate(const ExponentialSumModel& model, double t) {
    Complex sum = 0.0;
    for (const auto& term : model.terms) {
        Complex poly = 0.0;
        for (auto it = term.gammas.rbegin(); it != term.gammas.rend(); ++it)
            poly = poly * t + *it;
        sum += poly * std::exp(two_pi * term.lambda * t);
    }
    return sum;
}

ExponentialSumModel canonicalize(const ExponentialSumModel& model,
                                 double merge_tol) {
    if (!(merge_tol >= 0.0))
        throw std::invalid_argument("canonicalize: merge_tol must be >= 0");

    std::vector<ExpTerm> terms;
    terms.reserve(model.terms.size());
    for (const auto& term : model.terms) {
        if (!term.gammas.empty())
            terms.push_back(term);
    }

    bool merged = !terms.empty();
    while (merged)
        terms = merge_terms(terms, merge_tol, merged);

    std::vector<ExpTerm> kept;
    for (auto& term : terms) {
        double scale = 0.0;
        for (const auto& g : term.gammas)
            scale = std::max(scale, std::abs(g));
        auto& gs = term.gammas;
        while (!gs.empty() && std::abs(gs.back()) <= 1e-12 * scale)
            gs.pop_back();
        if (!gs.empty())
            kept.push_back(std::move(term));
    }
    std::sort(kept.begin(), kept.end(), lambda_less);
    return ExponentialSumModel{std::move(kept)};
}

ModelDistance model_distance(const ExponentialSumModel& a,
                             const ExponentialSumModel& b) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (a.terms.size() != b.terms.size())
        return ModelDistance{inf, inf, false};
    const std::size_t n = a.terms.size();
    if (n == 0)
        return ModelDistance{0.0, 0.0, true};

    // globally greedy nearest-frequency matching
    std::vector<bool> used_a(n, false), used_b(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t round = 0; round < n; ++round) {
        double best = inf;
        std::size_t bi = 0, bj = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (used_a[i])
                continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (used_b[j])
                    continue;
                const double d = std::abs(a.terms[i].lambda - b.terms[j].lambda);
                if (d < best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        used_a[bi] = true;
        used_b[bj] = true;
        pairs.emplace_back(bi, bj);
    }

    ModelDistance dist{0.0, 0.0, true};
    for (const auto& [i, j] : pairs) {
        dist.freq_err = std::max(
            dist.freq_err, std::abs(a.terms[i].lambda - b.terms[j].lambda));
        if (a.terms[i].gammas.size() != b.terms[j].gammas.size()) {
            dist.matched = false;
            dist.coef_err = inf;
            continue;
        }
        for (std::size_t m = 0; m < a.terms[i].gammas.size(); ++m)
            dist.coef_err =
                std::max(dist.coef_err,
                         std::abs(a.terms[i].gammas[m] - b.terms[j].gammas[m]));
    }
    return dist;
}

} // namespace expsum
