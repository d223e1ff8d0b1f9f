#ifndef EXPSUM_RECOVERY_HPP
#define EXPSUM_RECOVERY_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "expsum/aaa.hpp"
#include "expsum/fourier.hpp"
#include "expsum/model.hpp"
#include "expsum/partial_fraction.hpp"

namespace expsum {

/// Thrown when a recovery pipeline cannot produce a model (AAA did not
/// converge, a periodic index is missing from the data, a back-map is
/// undefined, ...).
class RecoveryError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RecoveryMode {
    automatic, ///< the general pipeline (same as extended)
    proper,    ///< simple-pole fast path for proper sums
    real_proper, ///< real-arithmetic path for real proper sums, k >= 1
    extended,  ///< confluent pipeline with periodic post-processing
};

struct RecoveryOptions {
    double tol = 1e-13;          ///< AAA stopping tolerance
    int jmax = 100;              ///< AAA iteration cap
    double merge_tol = 1e-2;     ///< pole clustering distance
    double zero_weight_tol = 1e-8; ///< relative zero-weight threshold
    RecoveryMode mode = RecoveryMode::automatic;
};

struct RecoveryReport {
    ExponentialSumModel model; ///< canonicalized recovered model
    std::vector<long> sigma;   ///< recovered periodic index set, sorted
    AaaDiagnostics aaa;
    PoleClusterSet clusters;
    double condition_estimate = 1.0;
    /// max over the input indices of the relative mismatch between the
    /// recovered model's coefficients and the data; large values flag an
    /// unreliable recovery
    double verification_residual = 0.0;
    std::vector<std::string> warnings;
    std::optional<ModelDistance> reference_distance;
};

/// lambda = i C / P.
Complex frequency_from_pole(Complex pole, double period);

///
/// Polynomial coefficients of a non-periodic term from its partial
/// fraction coefficients A_0..A_n at pole C, by backward substitution of
/// the upper-triangular relation between the two parameter sets. Fails
/// when |1 - e^{2 pi i C}| < 1e-12 (a near-periodic pole does not belong
/// on this path).
///
std::vector<Complex> gammas_from_cluster(std::span<const Complex> coeffs,
                                         Complex pole, double period);

///
/// Polynomial coefficients gamma_0..gamma_n of a periodic term from its
/// n partial fraction coefficients A*_0..A*_{n-1} and the corrected
/// spike coefficient c (the Fourier coefficient at the term's integer
/// index minus every other cluster's contribution there). gamma_1..gamma_n
/// come from the backward recursion, gamma_0 from the spike row. With an
/// empty coefficient list this reduces to gamma_0 = c.
///
std::vector<Complex>
gammas_from_periodic_cluster(std::span<const Complex> coeffs,
                             Complex corrected_coeff, double period);

///
/// End-to-end recovery from Fourier coefficients: AAA fit, zero-weight
/// pruning (periodic spike detection), pole clustering and
/// classification, confluent residue solve excluding the periodic
/// indices, and the parameter back-maps for both the non-periodic and
/// periodic parts. With mode = proper the poles are kept simple instead
/// of clustered. When a reference model is supplied the report carries
/// the distance to it.
///
RecoveryReport
recover(const FourierDataset& data, const RecoveryOptions& opts = {},
        const std::optional<ExponentialSumModel>& reference = std::nullopt);

///
/// Real-arithmetic path for real proper sums sampled at indices k >= 1:
/// fits the modified coefficients Re c_k + (i/k) Im c_k over the squared
/// abscissae k^2, solves the simple-pole residues g_j = A_j + i B_j, and
/// maps alpha_j = A_j / (B_j P) and gamma_j = 2 pi B_j / (e^{2 pi alpha_j P} - 1).
/// Fails when an index k < 1 is present, a pole keeps a non-negligible
/// imaginary part, or some |B_j| <= 1e-12 |A_j|.
///
RecoveryReport recover_real_proper(
    const FourierDataset& data, const RecoveryOptions& opts = {},
    const std::optional<ExponentialSumModel>& reference = std::nullopt);

} // namespace expsum

#endif // EXPSUM_RECOVERY_HPP
