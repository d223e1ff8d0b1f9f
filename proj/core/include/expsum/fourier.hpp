#ifndef EXPSUM_FOURIER_HPP
#define EXPSUM_FOURIER_HPP

#include <vector>

#include "expsum/model.hpp"

namespace expsum {

/// One classical Fourier coefficient c_k(y) of the expansion on [0, P].
struct FourierEntry {
    long k;
    Complex c;
};

/// A finite set of Fourier coefficients over a period P > 0. Indices are
/// pairwise distinct but need not be contiguous or sorted.
struct FourierDataset {
    double period = 1.0;
    std::vector<FourierEntry> entries;
};

/// Tolerance for deciding -i*lambda*P is an integer, i.e. whether a term
/// is P-periodic. Inputs within this distance of an integer are routed to
/// the periodic-case formulas, whose evaluation stays stable where the
/// general formula becomes singular.
inline constexpr double periodicity_tol = 1e-9;

/// c_k of gamma * t^m * exp(2 pi lambda t) on [0, P].
Complex coeff_monomial_exp(Complex gamma, int m, Complex lambda, double period,
                           long k);

/// c_k of gamma * exp(2 pi lambda t) on [0, P] (the m = 0 case, evaluated
/// so that it agrees bit-for-bit with coeff_monomial_exp).
Complex coeff_proper(Complex gamma, Complex lambda, double period, long k);

/// c_k of gamma * exp(2 pi alpha t) with real gamma and real alpha != 0,
/// in the real-arithmetic form gamma e^{pi alpha P}(P alpha + ik)
/// sinh(pi alpha P) / (pi (alpha^2 P^2 + k^2)).
Complex coeff_real_proper(double gamma, double alpha, double period, long k);

/// c_k of a whole model (linearity of the Fourier integral).
Complex coeff_model(const ExponentialSumModel& model, double period, long k);

///
/// A partial fraction with (possibly) repeated poles,
///
///   sum_j sum_l coefficients[l] / (z - pole)^(l+1).
///
/// For a cluster built from a term of degree n the coefficient list has
/// length n+1 when the pole is not an integer and length n when it is
/// (`periodic` set); a periodic cluster of a proper term has an empty
/// list and contributes nothing away from its spike index.
///
struct PartialFractionCluster {
    Complex pole;
    std::vector<Complex> coefficients;
    bool periodic = false;
};

struct ConfluentPartialFraction {
    std::vector<PartialFractionCluster> clusters;
};

/// Evaluates the partial fraction at z (spike contributions of periodic
/// clusters are not represented and hence not included).
Complex eval_partial_fraction(const ConfluentPartialFraction& pf, Complex z);

///
/// Exact pole/coefficient parameters of the rational function that
/// represents the Fourier coefficients of `model` on [0, P]: pole
/// C_j = -i lambda_j P per term, with the closed-form coefficients of the
/// non-periodic or periodic case. Away from the periodic spike indices,
/// eval_partial_fraction reproduces coeff_model.
///
ConfluentPartialFraction confluent_params(const ExponentialSumModel& model,
                                          double period);

///
/// Independent check of the closed forms: evaluates
/// (1/P) * integral_0^P y(t) e^{-2 pi i k t / P} dt by adaptive
/// Gauss-Kronrod quadrature over at least max(16, 4|k|) panels, touching
/// the model only through evaluate(). Throws std::runtime_error when the
/// requested absolute tolerance cannot be certified.
///
Complex coeff_quadrature_oracle(const ExponentialSumModel& model,
                                double period, long k, double tol = 1e-12);

/// Exact coefficients of `model` for all k in [k_first, k_last].
FourierDataset make_dataset(const ExponentialSumModel& model, double period,
                            long k_first, long k_last);

} // namespace expsum

#endif // EXPSUM_FOURIER_HPP
