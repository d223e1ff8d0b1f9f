#ifndef EXPSUM_AAA_HPP
#define EXPSUM_AAA_HPP

#include <span>
#include <vector>

#include "expsum/model.hpp"

namespace expsum {

///
/// A rational function r(z) = p(z)/q(z) in barycentric form,
///
///   p(z) = sum_j w_j f_j / (z - z_j),   q(z) = sum_j w_j / (z - z_j),
///
/// with support points z_j, support values f_j = f(z_j) and weights w_j.
/// Fits produced by aaa_fit satisfy ||w||_2 = 1 and the side condition
/// w^T f = 0 (plain transpose product), which forces numerator degree
/// one below denominator degree.
///
struct BarycentricRational {
    std::vector<Complex> support;
    std::vector<Complex> values;
    std::vector<Complex> weights;

    std::size_t size() const { return support.size(); }
};

/// Evaluates r at z. At a support point the interpolated value is
/// returned when its weight is nonzero; otherwise the limit is taken by
/// excluding that index from both sums.
Complex bary_eval(const BarycentricRational& r, Complex z);

struct AaaDiagnostics {
    int iterations = 0;
    double final_residual = 0.0;
    std::vector<double> residual_history;
    bool converged = false;
    /// Set when the two-vector weight combination degenerated and the fit
    /// fell back to the smallest singular vector alone.
    bool weight_fallback = false;
};

struct AaaApproximant {
    BarycentricRational rational;
    AaaDiagnostics diagnostics;
};

///
/// Greedy rational approximation of data (points, values).
///
/// Step 1 seeds the support with the two points of largest |f| (earliest
/// index on ties); each later step adds the point of largest residual.
/// Every step solves the Loewner least-squares problem restricted by the
/// two side conditions: the weight vector is built from the right
/// singular vectors v1, v2 of the two smallest singular values as
/// w ~ (v2^T f_S) v1 - (v1^T f_S) v2, normalized to unit 2-norm. The
/// iteration stops once the largest error over the non-support points
/// drops below tol * max|f| (the tolerance is relative to the data
/// scale), or after jmax steps (jmax is clamped so at least one
/// non-support point always remains). Diagnostics report the absolute
/// residuals.
///
/// Requires at least 3 points; `converged` reports whether `tol` was met.
///
AaaApproximant aaa_fit(std::span<const Complex> points,
                       std::span<const Complex> values, double tol = 1e-13,
                       int jmax = 100);

struct PruneResult {
    BarycentricRational rational;
    /// Support points whose weight was (numerically) zero; for Fourier
    /// data these are the candidates for the periodic index set.
    std::vector<Complex> removed;
};

/// Removes every support triple with |w_j| <= zero_tol * max|w| and
/// renormalizes the remaining weights. Fails if nothing would remain.
PruneResult prune_zero_weights(const BarycentricRational& r,
                               double zero_tol = 1e-8);

} // namespace expsum

#endif // EXPSUM_AAA_HPP
