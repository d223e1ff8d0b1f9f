#ifndef EXPSUM_IO_HPP
#define EXPSUM_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "expsum/fourier.hpp"
#include "expsum/model.hpp"
#include "expsum/recovery.hpp"

namespace expsum {

/// Thrown on malformed input files (bad JSON, bad CSV, missing fields).
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Model files: JSON of the form
//   {"terms":[{"lambda":[re,im],"gammas":[[re,im],...]},...]}
// with numbers serialized in full round-trip precision.
ExponentialSumModel model_from_json(const std::string& text);
std::string model_to_json(const ExponentialSumModel& model);
ExponentialSumModel load_model(const std::filesystem::path& path);
void save_model(const ExponentialSumModel& model,
                const std::filesystem::path& path);

// Coefficient files: CSV with header "k,re,im", one row per index.
// Indices need not be contiguous or sorted. The period is not part of
// the file and must be supplied by the caller.
FourierDataset read_coefficients_csv(std::istream& in, double period);
void write_coefficients_csv(std::ostream& out, const FourierDataset& data);
FourierDataset load_coefficients(const std::filesystem::path& path,
                                 double period);
void save_coefficients(const FourierDataset& data,
                       const std::filesystem::path& path);

// Sample files: CSV with header "t,re,im,abs".
void write_samples_csv(std::ostream& out, std::span<const double> ts,
                       std::span<const Complex> values);

/// Recovery report as JSON (schema documented in the README).
std::string report_to_json(const RecoveryReport& report);

/// Formats a double with 17 significant digits (round-trip exact).
std::string format_double(double x);

} // namespace expsum

#endif // EXPSUM_IO_HPP
