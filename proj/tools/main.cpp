// expsum: recover exponential-sum parameters from classical Fourier
// coefficients, generate coefficient datasets, evaluate and compare models.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "expsum/io.hpp"
#include "expsum/recovery.hpp"

namespace {

using namespace expsum;

class UsageError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a:b" with inclusive integer endpoints
std::pair<long, long> parse_index_range(const std::string& spec) {
    const auto pos = spec.find(':', 1); // skip a leading minus sign
    if (pos == std::string::npos)
        throw UsageError("--indices expects 'a:b'");
    try {
        const long a = std::stol(spec.substr(0, pos));
        const long b = std::stol(spec.substr(pos + 1));
        if (b < a)
            throw UsageError("--indices range is empty");
        return {a, b};
    } catch (const std::invalid_argument&) {
        throw UsageError("--indices expects integers 'a:b'");
    } catch (const std::out_of_range&) {
        throw UsageError("--indices endpoints out of range");
    }
}

// "start:stop:count"
struct GridSpec {
    double start, stop;
    long count;
};

GridSpec parse_grid(const std::string& spec) {
    const auto p1 = spec.find(':', 1);
    if (p1 == std::string::npos)
        throw UsageError("--grid expects 'start:stop:count'");
    const auto p2 = spec.find(':', p1 + 2);
    if (p2 == std::string::npos)
        throw UsageError("--grid expects 'start:stop:count'");
    try {
        GridSpec g{std::stod(spec.substr(0, p1)),
                   std::stod(spec.substr(p1 + 1, p2 - p1 - 1)),
                   std::stol(spec.substr(p2 + 1))};
        if (g.count < 2)
            throw UsageError("--grid count must be >= 2");
        return g;
    } catch (const std::invalid_argument&) {
        throw UsageError("--grid expects numbers 'start:stop:count'");
    } catch (const std::out_of_range&) {
        throw UsageError("--grid values out of range");
    }
}

std::vector<long> read_index_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open " + path);
    std::vector<long> ks;
    long k = 0;
    while (in >> k)
        ks.push_back(k);
    if (!in.eof())
        throw IoError("bad integer in " + path);
    if (ks.empty())
        throw IoError("no indices in " + path);
    return ks;
}

// writes either to the given file or to standard output
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + out_path);
    out << text;
}

RecoveryMode parse_mode(const std::string& mode) {
    if (mode == "auto")
        return RecoveryMode::automatic;
    if (mode == "proper")
        return RecoveryMode::proper;
    if (mode == "real_proper")
        return RecoveryMode::real_proper;
    if (mode == "extended")
        return RecoveryMode::extended;
    throw UsageError("unknown mode '" + mode + "'");
}

int run(int argc, char** argv) {
    CLI::App app{"Parameter recovery for proper and extended exponential "
                 "sums from Fourier coefficients"};
    app.require_subcommand(1);

    // ---- generate ----------------------------------------------------
    auto* gen = app.add_subcommand(
        "generate", "Write the coefficient CSV of a model file");
    std::string gen_model, gen_indices, gen_index_file, gen_out;
    double gen_period = 0.0, gen_noise = 0.0;
    unsigned long long gen_seed = 0;
    gen->add_option("-m,--model", gen_model, "model JSON file")->required();
    gen->add_option("-p,--period", gen_period, "period P > 0")->required();
    gen->add_option("--indices", gen_indices, "inclusive index range a:b");
    gen->add_option("--index-file", gen_index_file,
                    "file with one integer index per line");
    gen->add_option("--noise", gen_noise,
                    "standard deviation of complex Gaussian noise");
    gen->add_option("--seed", gen_seed, "noise RNG seed (default 0)");
    gen->add_option("-o,--out", gen_out, "output file (default stdout)");

    // ---- recover ------------------------------------------------------
    auto* rec = app.add_subcommand(
        "recover", "Recover model parameters from a coefficient CSV");
    std::string rec_coeffs, rec_mode = "auto", rec_reference, rec_out;
    RecoveryOptions rec_opts;
    double rec_period = 0.0;
    rec->add_option("coeffs", rec_coeffs, "coefficient CSV file")->required();
    rec->add_option("-p,--period", rec_period, "period P > 0")->required();
    rec->add_option("--mode", rec_mode,
                    "auto | proper | real_proper | extended");
    rec->add_option("--tol", rec_opts.tol, "AAA stopping tolerance");
    rec->add_option("--jmax", rec_opts.jmax, "AAA iteration cap");
    rec->add_option("--merge-tol", rec_opts.merge_tol,
                    "pole clustering distance");
    rec->add_option("--zero-weight-tol", rec_opts.zero_weight_tol,
                    "relative zero-weight threshold");
    rec->add_option("--reference", rec_reference,
                    "reference model JSON for error reporting");
    rec->add_option("-o,--out", rec_out, "output file (default stdout)");

    // ---- eval ---------------------------------------------------------
    auto* ev = app.add_subcommand("eval",
                                  "Sample a model on a grid (plot-ready CSV)");
    std::string ev_model, ev_grid, ev_out;
    ev->add_option("-m,--model", ev_model, "model JSON file")->required();
    ev->add_option("--grid", ev_grid, "grid start:stop:count")->required();
    ev->add_option("-o,--out", ev_out, "output file (default stdout)");

    // ---- compare ------------------------------------------------------
    auto* cmp = app.add_subcommand("compare",
                                   "Distance between two model files");
    std::string cmp_a, cmp_b, cmp_out;
    cmp->add_option("model_a", cmp_a, "first model JSON")->required();
    cmp->add_option("model_b", cmp_b, "second model JSON")->required();
    cmp->add_option("-o,--out", cmp_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (gen->parsed()) {
        if (!(gen_period > 0.0))
            throw UsageError("--period must be > 0");
        if (gen_indices.empty() == gen_index_file.empty())
            throw UsageError(
                "exactly one of --indices and --index-file is required");
        const auto model = load_model(gen_model);
        std::vector<long> ks;
        if (!gen_indices.empty()) {
            const auto [a, b] = parse_index_range(gen_indices);
            for (long k = a; k <= b; ++k)
                ks.push_back(k);
        } else {
            ks = read_index_file(gen_index_file);
        }
        FourierDataset data;
        data.period = gen_period;
        for (const long k : ks)
            data.entries.push_back(
                FourierEntry{k, coeff_model(model, gen_period, k)});
        if (gen_noise > 0.0) {
            std::mt19937_64 rng(gen_seed);
            std::normal_distribution<double> normal(0.0, 1.0);
            const double s = gen_noise / std::sqrt(2.0);
            for (auto& entry : data.entries)
                entry.c += Complex{s * normal(rng), s * normal(rng)};
        }
        std::ostringstream csv;
        write_coefficients_csv(csv, data);
        emit(gen_out, csv.str());
        return 0;
    }

    if (rec->parsed()) {
        if (!(rec_period > 0.0))
            throw UsageError("--period must be > 0");
        rec_opts.mode = parse_mode(rec_mode);
        const auto data = load_coefficients(rec_coeffs, rec_period);
        std::optional<ExponentialSumModel> reference;
        if (!rec_reference.empty())
            reference = load_model(rec_reference);
        const auto report = recover(data, rec_opts, reference);
        emit(rec_out, report_to_json(report));
        return 0;
    }

    if (ev->parsed()) {
        const auto model = load_model(ev_model);
        const auto grid = parse_grid(ev_grid);
        std::vector<double> ts(static_cast<std::size_t>(grid.count));
        std::vector<Complex> vals(ts.size());
        const double step = (grid.stop - grid.start) /
                            static_cast<double>(grid.count - 1);
        for (long i = 0; i < grid.count; ++i) {
            ts[static_cast<std::size_t>(i)] =
                grid.start + static_cast<double>(i) * step;
            vals[static_cast<std::size_t>(i)] =
                evaluate(model, ts[static_cast<std::size_t>(i)]);
        }
        std::ostringstream csv;
        write_samples_csv(csv, ts, vals);
        emit(ev_out, csv.str());
        return 0;
    }

    // compare
    const auto a = canonicalize(load_model(cmp_a));
    const auto b = canonicalize(load_model(cmp_b));
    const auto dist = model_distance(a, b);
    nlohmann::json j;
    j["freq_err"] =
        std::isfinite(dist.freq_err) ? nlohmann::json(dist.freq_err)
                                     : nlohmann::json();
    j["coef_err"] =
        std::isfinite(dist.coef_err) ? nlohmann::json(dist.coef_err)
                                     : nlohmann::json();
    j["matched"] = dist.matched;
    emit(cmp_out, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const expsum::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        // recovery and other numerical failures
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
