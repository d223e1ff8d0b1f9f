#include "expsum/partial_fraction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace expsum {

namespace {

bool complex_less(Complex a, Complex b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

double condition_from_singular_values(const Eigen::VectorXd& sv) {
    if (sv.size() == 0)
        return std::numeric_limits<double>::infinity();
    const double smin = sv(sv.size() - 1);
    if (smin <= 0.0)
        return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

} // namespace

Complex refine_denominator_zero(const BarycentricRational& r, Complex rho) {
    auto q_value = [&](Complex x, Complex& derivative) {
        Complex q = 0.0, qp = 0.0;
        for (std::size_t j = 0; j < r.size(); ++j) {
            const Complex d = x - r.support[j];
            if (d == Complex{0.0})
                return Complex{std::numeric_limits<double>::infinity(), 0.0};
            const Complex inv = r.weights[j] / d;
            q += inv;
            qp -= inv / d;
        }
        derivative = qp;
        return q;
    };
    Complex x = rho;
    Complex qp = 0.0;
    Complex q = q_value(x, qp);
    if (!std::isfinite(std::abs(q)))
        return rho;
    for (int step = 0; step < 3; ++step) {
        if (qp == Complex{0.0})
            break;
        const Complex candidate = x - q / qp;
        Complex qp_next = 0.0;
        const Complex q_next = q_value(candidate, qp_next);
        if (!(std::abs(q_next) < std::abs(q)))
            break;
        x = candidate;
        q = q_next;
        qp = qp_next;
    }
    return x;
}

std::vector<Complex> poles(const BarycentricRational& r) {
    const auto m = static_cast<lapack_int>(r.size()); // J + 1
    if (m < 2)
        throw std::invalid_argument("poles: need at least 2 support points");
    const lapack_int n = m + 1;

    // column-major pencil of the arrowhead eigenproblem
    std::vector<Complex> a(static_cast<std::size_t>(n) * n, Complex{0.0});
    std::vector<Complex> b(static_cast<std::size_t>(n) * n, Complex{0.0});
    for (lapack_int j = 0; j < m; ++j) {
        a[static_cast<std::size_t>(j + 1) * n + 0] = r.weights[j]; // row 0
        a[static_cast<std::size_t>(0) * n + j + 1] = 1.0;          // col 0
        a[static_cast<std::size_t>(j + 1) * n + j + 1] = r.support[j];
        b[static_cast<std::size_t>(j + 1) * n + j + 1] = 1.0;
    }

    std::vector<Complex> alpha(n), beta(n);
    const lapack_int info = LAPACKE_zggev(
        LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n, b.data(), n, alpha.data(),
        beta.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw std::runtime_error("poles: generalized eigensolver failed");

    double scale = 1.0;
    for (const auto& z : r.support)
        scale = std::max(scale, std::abs(z));
    const double bound = 1e10 * scale;

    std::vector<Complex> finite;
    for (lapack_int i = 0; i < n; ++i) {
        if (std::abs(beta[i]) == 0.0)
            continue;
        const Complex rho = alpha[i] / beta[i];
        if (!std::isfinite(rho.real()) || !std::isfinite(rho.imag()))
            continue;
        if (std::abs(rho) > bound)
            continue;
        finite.push_back(rho);
    }
    const std::size_t expected = r.size() - 1; // J
    if (finite.size() < expected)
        throw std::runtime_error(
            "poles: fewer finite eigenvalues than expected");
    if (finite.size() > expected) {
        // keep the smallest; anything extra is a poorly deflated infinity
        std::sort(finite.begin(), finite.end(),
                  [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
        finite.resize(expected);
    }
    std::sort(finite.begin(), finite.end(), complex_less);
    return finite;
}

PoleClusterSet cluster_poles(std::span<const Complex> raw, double merge_tol) {
    if (!(merge_tol > 0.0))
        throw std::invalid_argument("cluster_poles: merge_tol must be > 0");
    const std::size_t n = raw.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (std::abs(raw[i] - raw[j]) < merge_tol)
                parent[find(j)] = find(i);

    PoleClusterSet set;
    set.raw_poles.assign(raw.begin(), raw.end());
    set.merge_tol = merge_tol;
    std::vector<bool> done(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const auto root = find(i);
        if (done[root])
            continue;
        done[root] = true;
        Complex sum = 0.0;
        int count = 0;
        for (std::size_t j = i; j < n; ++j) {
            if (find(j) == root) {
                sum += raw[j];
                ++count;
            }
        }
        set.clusters.push_back(
            PoleCluster{sum / static_cast<double>(count), count});
    }
    std::sort(set.clusters.begin(), set.clusters.end(),
              [](const PoleCluster& x, const PoleCluster& y) {
                  return complex_less(x.center, y.center);
              });
    return set;
}

std::vector<Complex> solve_residues_simple(const BarycentricRational& r,
                                           std::span<const Complex> pole_list,
                                           double* condition) {
    const auto rows = static_cast<Eigen::Index>(r.size());
    const auto cols = static_cast<Eigen::Index>(pole_list.size());
    if (cols == 0 || rows < cols)
        throw std::invalid_argument(
            "solve_residues_simple: need at least as many support points as "
            "poles");

    Eigen::MatrixXcd cauchy(rows, cols);
    Eigen::VectorXcd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        rhs(i) = r.values[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < cols; ++j) {
            const Complex d = r.support[static_cast<std::size_t>(i)] -
                              pole_list[static_cast<std::size_t>(j)];
            if (d == Complex{0.0})
                throw std::invalid_argument(
                    "solve_residues_simple: pole coincides with a support "
                    "point");
            cauchy(i, j) = 1.0 / d;
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(cauchy);
    if (condition)
        *condition = condition_from_singular_values(svd.singularValues());

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(cauchy);
    if (cod.rank() < cols)
        throw std::runtime_error("solve_residues_simple: rank-deficient "
                                 "Cauchy system");
    const Eigen::VectorXcd g = cod.solve(rhs);
    return std::vector<Complex>(g.data(), g.data() + g.size());
}

ConfluentSolveResult
solve_residues_confluent(std::span<const Complex> support,
                         std::span<const Complex> support_values,
                         const PoleClusterSet& clusters,
                         std::span<const Complex> exclude) {
    if (support.size() != support_values.size())
        throw std::invalid_argument(
            "solve_residues_confluent: support/values size mismatch");

    std::vector<std::size_t> retained;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const bool excluded =
            std::any_of(exclude.begin(), exclude.end(),
                        [&](Complex e) { return e == support[i]; });
        if (!excluded)
            retained.push_back(i);
    }

    Eigen::Index unknowns = 0;
    for (const auto& cluster : clusters.clusters)
        unknowns += cluster.count;
    const auto rows = static_cast<Eigen::Index>(retained.size());
    if (unknowns == 0)
        throw std::invalid_argument("solve_residues_confluent: no clusters");
    if (rows < unknowns)
        throw std::invalid_argument(
            "solve_residues_confluent: fewer interpolation conditions than "
            "unknowns");

    Eigen::MatrixXcd basis(rows, unknowns);
    Eigen::VectorXcd rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Complex z = support[retained[static_cast<std::size_t>(i)]];
        rhs(i) = support_values[retained[static_cast<std::size_t>(i)]];
        Eigen::Index col = 0;
        for (const auto& cluster : clusters.clusters) {
            const Complex inv = 1.0 / (z - cluster.center);
            Complex p = inv;
            for (int l = 0; l < cluster.count; ++l) {
                basis(i, col++) = p;
                p *= inv;
            }
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(basis);
    const double cond = condition_from_singular_values(svd.singularValues());

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(basis);
    if (cod.rank() < unknowns)
        throw std::runtime_error(
            "solve_residues_confluent: rank-deficient interpolation system");
    const Eigen::VectorXcd solution = cod.solve(rhs);

    ConfluentSolveResult result;
    result.condition_estimate = cond;
    Eigen::Index col = 0;
    for (const auto& cluster : clusters.clusters) {
        PartialFractionCluster out;
        out.pole = cluster.center;
        out.periodic = is_periodic_pole(cluster.center);
        for (int l = 0; l < cluster.count; ++l)
            out.coefficients.push_back(solution(col++));
        result.fraction.clusters.push_back(std::move(out));
    }
    return result;
}

} // namespace expsum
