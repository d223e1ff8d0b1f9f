#ifndef EXPSUM_MODEL_HPP
#define EXPSUM_MODEL_HPP

#include <complex>
#include <vector>

namespace expsum {

using Complex = std::complex<double>;

///
/// One summand of an extended exponential sum,
///
///   (gammas[0] + gammas[1] t + ... + gammas[n] t^n) * exp(2 pi lambda t).
///
/// `gammas[m]` is the coefficient of t^m. The list is never empty and its
/// last entry is nonzero once the owning model has been canonicalized.
///
struct ExpTerm {
    Complex lambda;
    std::vector<Complex> gammas;

    /// Degree of the polynomial coefficient (n = gammas.size() - 1).
    int degree() const { return static_cast<int>(gammas.size()) - 1; }
};

///
/// A sum of ExpTerm values. The order is the dimension of the solution
/// space of the underlying ODE, i.e. the sum of (1 + degree) over terms;
/// the length is the number of distinct frequencies.
///
struct ExponentialSumModel {
    std::vector<ExpTerm> terms;

    int order() const;
    int length() const { return static_cast<int>(terms.size()); }
    bool empty() const { return terms.empty(); }
};

/// Evaluates the sum at time t. Polynomial parts use Horner's rule.
/// Extreme Re(lambda)*t may overflow to an infinite value; this is not
/// trapped.
Complex evaluate(const ExponentialSumModel& model, double t);

///
/// Canonical form: terms whose frequencies differ by at most `merge_tol`
/// are merged by adding their coefficient lists (the merged frequency is
/// the mean of the members), trailing near-zero leading coefficients are
/// dropped (relative threshold 1e-12 against the term's largest |gamma|),
/// vanished terms are removed, and the result is sorted by
/// (Re lambda, Im lambda). Merging is repeated until it reaches a fixed
/// point, so canonicalize is idempotent.
///
ExponentialSumModel canonicalize(const ExponentialSumModel& model,
                                 double merge_tol = 1e-10);

///
/// Infinity-norm distance between two canonical models with terms matched
/// greedily by nearest frequency. `matched` is false (and the errors are
/// infinite where not computable) when the term counts or the per-term
/// polynomial degrees differ.
///
struct ModelDistance {
    double freq_err = 0.0;
    double coef_err = 0.0;
    bool matched = false;
};

ModelDistance model_distance(const ExponentialSumModel& a,
                             const ExponentialSumModel& b);

} // namespace expsum

#endif // EXPSUM_MODEL_HPP
