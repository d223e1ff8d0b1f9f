#include <doctest.h>

#include <cmath>
#include <random>

#include "expsum/aaa.hpp"
#include "expsum/fourier.hpp"
#include "support/paper_models.hpp"
#include "support/test_utils.hpp"

using namespace expsum;

namespace {

// the example datasets as (points, values) pairs
struct FitData {
    std::vector<Complex> points;
    std::vector<Complex> values;
};

FitData integer_data(const ExponentialSumModel& m, double period, long k_first,
                     long k_last) {
    FitData d;
    for (long k = k_first; k <= k_last; ++k) {
        d.points.emplace_back(static_cast<double>(k), 0.0);
        d.values.push_back(coeff_model(m, period, k));
    }
    return d;
}

FitData y2_modified_data() {
    FitData d;
    const auto m = paper::y2();
    for (long k = 1; k <= 40; ++k) {
        const Complex c = coeff_model(m, 3.0, k);
        d.points.emplace_back(static_cast<double>(k * k), 0.0);
        d.values.emplace_back(c.real(), c.imag() / static_cast<double>(k));
    }
    return d;
}

double side_condition(const BarycentricRational& r) {
    Complex dot = 0.0;
    double fnorm = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) {
        dot += r.weights[j] * r.values[j];
        fnorm += std::norm(r.values[j]);
    }
    return std::abs(dot) / std::sqrt(fnorm);
}

double weight_norm(const BarycentricRational& r) {
    double n = 0.0;
    for (const auto& w : r.weights)
        n += std::norm(w);
    return std::sqrt(n);
}

} // namespace

TEST_CASE("aaa_fit: y2 modified coefficients, support acquisition order") {
    const auto d = y2_modified_data();
    const auto fit = aaa_fit(d.points, d.values, 1e-13, 50);
    CHECK(fit.diagnostics.converged);
    CHECK(fit.diagnostics.iterations == 5);
    CHECK(fit.diagnostics.final_residual <= 1e-13);
    const std::vector<double> expected{1.0, 4.0, 16.0, 1600.0, 225.0, 729.0};
    REQUIRE(fit.rational.support.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(fit.rational.support[i] == Complex{expected[i], 0.0});
}

TEST_CASE("aaa_fit: y3 terminates after 6 steps with the paper's support") {
    const auto d = integer_data(paper::y3(), 8.0, -29, 29);
    const auto fit = aaa_fit(d.points, d.values, 1e-13, 50);
    CHECK(fit.diagnostics.converged);
    CHECK(fit.diagnostics.iterations == 6);
    CHECK(fit.diagnostics.final_residual <= 1e-12);
    const std::vector<double> expected{18, -12, 17, -8, 19, 15, 21};
    REQUIRE(fit.rational.support.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(fit.rational.support[i] == Complex{expected[i], 0.0});
}

TEST_CASE("aaa_fit: one simple pole needs a single step") {
    std::vector<Complex> points, values;
    const Complex g{2.0, -1.0}, c{0.4, 0.3};
    for (long k = -3; k <= 3; ++k) {
        points.emplace_back(static_cast<double>(k), 0.0);
        values.push_back(g / (Complex{static_cast<double>(k), 0.0} - c));
    }
    const auto fit = aaa_fit(points, values, 1e-13, 10);
    CHECK(fit.diagnostics.converged);
    CHECK(fit.diagnostics.iterations == 1);
    CHECK(fit.diagnostics.final_residual <= 1e-13);
}

TEST_CASE("aaa_fit: side conditions hold on every output") {
    std::mt19937_64 rng(99);
    testutil::RandomModelOptions opts;
    opts.period = 2.0;
    opts.max_order = 5;
    for (int trial = 0; trial < 20; ++trial) {
        const auto m = testutil::random_model(rng, opts);
        const auto d = integer_data(m, opts.period, -12, 12);
        const auto fit = aaa_fit(d.points, d.values, 1e-13, 11);
        CHECK(std::abs(weight_norm(fit.rational) - 1.0) <= 1e-12);
        CHECK(side_condition(fit.rational) <= 1e-10);
    }
}

TEST_CASE("aaa_fit: first step weight is orthogonal to the seed values") {
    // at J=1 the two side conditions fix w up to phase
    std::vector<Complex> points{{0, 0}, {1, 0}, {2, 0}, {3, 0}};
    std::vector<Complex> values{{5, 1}, {3, -2}, {1, 0}, {0.5, 0.5}};
    const auto fit = aaa_fit(points, values, 1e-30, 1);
    REQUIRE(fit.rational.size() == 2);
    const Complex f1 = fit.rational.values[0], f2 = fit.rational.values[1];
    const Complex w1 = fit.rational.weights[0], w2 = fit.rational.weights[1];
    CHECK(std::abs(w1 * f1 + w2 * f2) <= 1e-14 * std::abs(f1));
    // unique direction up to phase: proportional to (f2, -f1)
    CHECK(std::abs(w1 * (-f1) - w2 * f2) <=
          1e-14 * (std::abs(f1) + std::abs(f2)));
}

TEST_CASE("aaa_fit: exactness on confluent partial fraction data") {
    // data generated through the closed-form partial fraction of order N
    // is fitted exactly in N iterations; held-out values match
    std::mt19937_64 rng(555);
    testutil::RandomModelOptions opts;
    opts.period = 2.0;
    opts.max_order = 6;
    for (int trial = 0; trial < 10; ++trial) {
        const auto m = testutil::random_model(rng, opts);
        const int order = m.order();
        const auto pf = confluent_params(m, opts.period);
        std::vector<Complex> points, values;
        const long k_max = order + 4;
        for (long k = -k_max; k <= k_max; ++k) {
            points.emplace_back(static_cast<double>(k), 0.0);
            values.push_back(
                eval_partial_fraction(pf, {static_cast<double>(k), 0.0}));
        }
        const auto fit = aaa_fit(points, values, 1e-13, 40);
        CHECK(fit.diagnostics.converged);
        CHECK(fit.diagnostics.iterations == order);
        for (long k = -k_max; k <= k_max; ++k) {
            const Complex expected =
                eval_partial_fraction(pf, {static_cast<double>(k), 0.0});
            const Complex got =
                bary_eval(fit.rational, {static_cast<double>(k), 0.0});
            CHECK(std::abs(got - expected) <=
                  1e-10 * (1.0 + std::abs(expected)));
        }
    }
}

TEST_CASE("aaa_fit: rejects undersized input") {
    std::vector<Complex> two{{0, 0}, {1, 0}};
    std::vector<Complex> vals{{1, 0}, {2, 0}};
    CHECK_THROWS_AS(aaa_fit(two, vals, 1e-13, 5), std::invalid_argument);
}

TEST_CASE("aaa_fit: reports converged=false at the iteration cap") {
    // e^z sampled on integers is not rational; one step cannot fit it
    std::vector<Complex> points, values;
    for (long k = 0; k < 12; ++k) {
        points.emplace_back(static_cast<double>(k), 0.0);
        values.push_back(std::exp(Complex{0.0, 0.7 * static_cast<double>(k)}) *
                         (1.0 + 0.1 * static_cast<double>(k)));
    }
    const auto fit = aaa_fit(points, values, 1e-13, 1);
    CHECK_FALSE(fit.diagnostics.converged);
    CHECK(fit.diagnostics.iterations == 1);
}

TEST_CASE("bary_eval: interpolation at supports, limit at zero weight") {
    BarycentricRational r;
    r.support = {{0, 0}, {1, 0}, {2, 0}};
    r.values = {{1, 0}, {2, 0}, {3, 0}};
    r.weights = {{0.5, 0}, {0.0, 0}, {-0.5, 0}};
    CHECK(bary_eval(r, {0, 0}) == Complex{1, 0});
    CHECK(bary_eval(r, {2, 0}) == Complex{3, 0});
    // at the zero-weight support the limit excludes that term
    const Complex limit = bary_eval(r, {1, 0});
    const Complex nearby = bary_eval(r, {1.0 + 1e-9, 0});
    CHECK(std::abs(limit - nearby) < 1e-6);
}

TEST_CASE("bary_eval: odd symmetry midpoint") {
    BarycentricRational r;
    const double s = 1.0 / std::sqrt(2.0);
    r.support = {{0, 0}, {2, 0}};
    r.values = {{1, 0}, {-1, 0}};
    r.weights = {{s, 0}, {s, 0}};
    CHECK(std::abs(bary_eval(r, {1, 0})) < 1e-15);
}

TEST_CASE("bary_eval: agrees with the expanded polynomial ratio") {
    std::mt19937_64 rng(31337);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 3);
        BarycentricRational r;
        for (std::size_t j = 0; j < n; ++j) {
            r.support.emplace_back(2.5 * static_cast<double>(j) + u(rng), 0.0);
            r.values.emplace_back(u(rng), u(rng));
            r.weights.emplace_back(u(rng), u(rng));
        }
        const auto expanded = testutil::expand_barycentric(r);
        for (int s = 0; s < 100; ++s) {
            const Complex z{4.0 * u(rng), 4.0 * u(rng)};
            const Complex direct = bary_eval(r, z);
            const Complex via_poly = testutil::poly_eval(expanded.num, z) /
                                     testutil::poly_eval(expanded.den, z);
            CHECK(std::abs(direct - via_poly) <=
                  1e-10 * (1.0 + std::abs(direct)));
        }
    }
}

TEST_CASE("prune_zero_weights: no-op below threshold") {
    BarycentricRational r;
    r.support = {{0, 0}, {1, 0}};
    r.values = {{1, 0}, {2, 0}};
    const double s = 1.0 / std::sqrt(2.0);
    r.weights = {{s, 0}, {-s, 0}};
    const auto pruned = prune_zero_weights(r, 1e-8);
    CHECK(pruned.removed.empty());
    CHECK(pruned.rational.support == r.support);
    CHECK(pruned.rational.weights == r.weights);
}

TEST_CASE("prune_zero_weights: y1 drops exactly the periodic index") {
    const auto d = integer_data(paper::y1(), 6.0, -29, 29);
    const auto fit = aaa_fit(d.points, d.values, 1e-13, 50);
    REQUIRE(fit.diagnostics.converged);
    CHECK(fit.diagnostics.iterations == 6);
    const auto pruned = prune_zero_weights(fit.rational, 1e-8);
    REQUIRE(pruned.removed.size() == 1);
    CHECK(pruned.removed[0] == Complex{-12.0, 0.0});
    const std::vector<double> remaining{8, 9, -13, -16, 20, 0};
    REQUIRE(pruned.rational.support.size() == remaining.size());
    for (std::size_t i = 0; i < remaining.size(); ++i)
        CHECK(pruned.rational.support[i] == Complex{remaining[i], 0.0});
    CHECK(std::abs(weight_norm(pruned.rational) - 1.0) <= 1e-12);
}

TEST_CASE("prune_zero_weights: y4 drops the spike at 12") {
    const auto d = integer_data(paper::y4(), 8.0, -47, 47);
    const auto fit = aaa_fit(d.points, d.values, 1e-12, 50);
    REQUIRE(fit.diagnostics.converged);
    CHECK(fit.diagnostics.iterations == 9);
    const auto pruned = prune_zero_weights(fit.rational, 1e-8);
    REQUIRE(pruned.removed.size() == 1);
    CHECK(pruned.removed[0] == Complex{12.0, 0.0});
    CHECK(pruned.rational.support.size() == 9);
}

TEST_CASE("prune_zero_weights: refuses to remove everything") {
    BarycentricRational r;
    r.support = {{0, 0}, {1, 0}};
    r.values = {{1, 0}, {1, 0}};
    r.weights = {{1e-20, 0}, {1e-20, 0}};
    CHECK_THROWS(prune_zero_weights(r, 1.0));
}
