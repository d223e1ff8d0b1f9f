#ifndef EXPSUM_PARTIAL_FRACTION_HPP
#define EXPSUM_PARTIAL_FRACTION_HPP

#include <cmath>
#include <span>
#include <vector>

#include "expsum/aaa.hpp"
#include "expsum/fourier.hpp"

namespace expsum {

///
/// Poles of a barycentric rational with J+1 support points: the J finite
/// eigenvalues of the (J+2)x(J+2) arrowhead pencil
///
///   [ 0  w^T ]        [ 0    ]
///   [ 1  diag(z) ] v = rho [   I  ] v.
///
/// The two structurally infinite eigenvalues are discarded (an eigenvalue
/// counts as infinite when it is non-finite or exceeds 1e10 * max|z_j|).
/// Returned sorted by (Re, Im). Throws when fewer than J finite
/// eigenvalues survive the filter.
///
std::vector<Complex> poles(const BarycentricRational& r);

/// Distance from an integer below which a cluster center is classified as
/// a periodic pole.
inline constexpr double pole_integer_tol = 1e-6;

/// True when a cluster center counts as a periodic (integer) pole.
inline bool is_periodic_pole(Complex center) {
    return std::abs(center.imag()) <= pole_integer_tol &&
           std::abs(center.real() - std::round(center.real())) <=
               pole_integer_tol;
}

struct PoleCluster {
    Complex center; ///< arithmetic mean of the member poles
    int count = 0;  ///< number of member poles
};

struct PoleClusterSet {
    std::vector<Complex> raw_poles;
    std::vector<PoleCluster> clusters; ///< sorted by (Re, Im) of center
    double merge_tol = 0.0;
};

/// Single-linkage clustering: poles join one cluster whenever they are
/// (transitively) closer than merge_tol.
PoleClusterSet cluster_poles(std::span<const Complex> raw, double merge_tol);

///
/// Newton-refines a pole estimate on the barycentric denominator (the
/// poles are its zeros). Worth doing for simple poles; the eigenvalue
/// star of a multiple pole is better left alone, its mean cancels the
/// perturbation to higher order than the refined star's does.
///
Complex refine_denominator_zero(const BarycentricRational& r, Complex rho);

///
/// Residues of a rational with simple poles: solves the Cauchy system
/// V g = f over the support points in least squares, where
/// V = (1 / (z_k - rho_j)). Optionally reports the condition estimate of
/// V. Throws on rank deficiency.
///
std::vector<Complex> solve_residues_simple(const BarycentricRational& r,
                                           std::span<const Complex> pole_list,
                                           double* condition = nullptr);

struct ConfluentSolveResult {
    ConfluentPartialFraction fraction;
    double condition_estimate = 1.0;
};

///
/// Confluent residue solve: finds the coefficients A_{j,l} of
/// sum_j sum_l A_{j,l} / (k - C_j)^(l+1) matching the support values at
/// every support point not listed in `exclude`, in least squares. Each
/// cluster contributes `count` unknowns; a cluster whose center lies
/// within pole_integer_tol of an integer is marked periodic (coefficient
/// orders l = 0..count-1 then mean orders 0..n_j-1 with n_j = count,
/// otherwise 0..n_j with n_j = count - 1). The solve uses a
/// column-pivoted orthogonal factorization; the condition estimate of the
/// interpolation matrix is returned alongside. Throws when the system is
/// underdetermined or rank deficient.
///
ConfluentSolveResult
solve_residues_confluent(std::span<const Complex> support,
                         std::span<const Complex> support_values,
                         const PoleClusterSet& clusters,
                         std::span<const Complex> exclude);

} // namespace expsum

#endif // EXPSUM_PARTIAL_FRACTION_HPP
