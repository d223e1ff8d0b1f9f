#include "expsum/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace expsum {

namespace {

using nlohmann::json;

Complex complex_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
        !j[1].is_number())
        throw IoError(std::string("expected [re,im] pair for ") + what);
    return Complex{j[0].get<double>(), j[1].get<double>()};
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    out << text;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                          s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view field, std::size_t line_no) {
    field = trim(field);
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw IoError("bad number '" + std::string(field) + "' on line " +
                      std::to_string(line_no));
    return value;
}

long parse_long(std::string_view field, std::size_t line_no) {
    field = trim(field);
    long value = 0;
    const auto [ptr, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size())
        throw IoError("bad integer '" + std::string(field) + "' on line " +
                      std::to_string(line_no));
    return value;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        if (pos == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

json distance_to_json(const ModelDistance& d) {
    json j;
    j["freq_err"] = std::isfinite(d.freq_err) ? json(d.freq_err) : json();
    j["coef_err"] = std::isfinite(d.coef_err) ? json(d.coef_err) : json();
    j["matched"] = d.matched;
    return j;
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

ExponentialSumModel model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoError(std::string("model JSON parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("terms") || !j["terms"].is_array())
        throw IoError("model JSON must be an object with a 'terms' array");
    ExponentialSumModel model;
    for (const auto& jt : j["terms"]) {
        if (!jt.is_object() || !jt.contains("lambda") || !jt.contains("gammas"))
            throw IoError("each term needs 'lambda' and 'gammas'");
        ExpTerm term;
        term.lambda = complex_from_json(jt["lambda"], "lambda");
        if (!jt["gammas"].is_array() || jt["gammas"].empty())
            throw IoError("'gammas' must be a non-empty array");
        for (const auto& jg : jt["gammas"])
            term.gammas.push_back(complex_from_json(jg, "gamma"));
        model.terms.push_back(std::move(term));
    }
    return model;
}

std::string model_to_json(const ExponentialSumModel& model) {
    json terms = json::array();
    for (const auto& term : model.terms) {
        json jt;
        jt["lambda"] = complex_to_json(term.lambda);
        json gammas = json::array();
        for (const auto& g : term.gammas)
            gammas.push_back(complex_to_json(g));
        jt["gammas"] = std::move(gammas);
        terms.push_back(std::move(jt));
    }
    json j;
    j["terms"] = std::move(terms);
    return j.dump(2) + "\n";
}

ExponentialSumModel load_model(const std::filesystem::path& path) {
    return model_from_json(read_file(path));
}

void save_model(const ExponentialSumModel& model,
                const std::filesystem::path& path) {
    write_file(path, model_to_json(model));
}

FourierDataset read_coefficients_csv(std::istream& in, double period) {
    FourierDataset data;
    data.period = period;
    std::string line;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto stripped = trim(line);
        if (stripped.empty())
            continue;
        if (!saw_header) {
            if (stripped != "k,re,im")
                throw IoError("coefficient CSV must start with header "
                              "'k,re,im'");
            saw_header = true;
            continue;
        }
        const auto fields = split_fields(stripped);
        if (fields.size() != 3)
            throw IoError("expected 3 fields on line " +
                          std::to_string(line_no));
        const long k = parse_long(fields[0], line_no);
        const double re = parse_double(fields[1], line_no);
        const double im = parse_double(fields[2], line_no);
        data.entries.push_back(FourierEntry{k, Complex{re, im}});
    }
    if (!saw_header)
        throw IoError("coefficient CSV is empty");
    return data;
}

void write_coefficients_csv(std::ostream& out, const FourierDataset& data) {
    out << "k,re,im\n";
    for (const auto& entry : data.entries)
        out << entry.k << ',' << format_double(entry.c.real()) << ','
            << format_double(entry.c.imag()) << '\n';
}

FourierDataset load_coefficients(const std::filesystem::path& path,
                                 double period) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    return read_coefficients_csv(in, period);
}

void save_coefficients(const FourierDataset& data,
                       const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write " + path.string());
    write_coefficients_csv(out, data);
}

void write_samples_csv(std::ostream& out, std::span<const double> ts,
                       std::span<const Complex> values) {
    out << "t,re,im,abs\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
        out << format_double(ts[i]) << ',' << format_double(values[i].real())
            << ',' << format_double(values[i].imag()) << ','
            << format_double(std::abs(values[i])) << '\n';
}

std::string report_to_json(const RecoveryReport& report) {
    json j;
    j["model"] = json::parse(model_to_json(report.model));
    j["sigma"] = report.sigma;
    json aaa;
    aaa["iterations"] = report.aaa.iterations;
    aaa["final_residual"] = report.aaa.final_residual;
    aaa["residual_history"] = report.aaa.residual_history;
    aaa["converged"] = report.aaa.converged;
    aaa["weight_fallback"] = report.aaa.weight_fallback;
    j["aaa"] = std::move(aaa);
    json clusters = json::array();
    for (const auto& cluster : report.clusters.clusters) {
        json jc;
        jc["center"] = complex_to_json(cluster.center);
        jc["count"] = cluster.count;
        jc["periodic"] = is_periodic_pole(cluster.center);
        clusters.push_back(std::move(jc));
    }
    j["clusters"] = std::move(clusters);
    j["merge_tol"] = report.clusters.merge_tol;
    j["condition_estimate"] = report.condition_estimate;
    j["verification_residual"] =
        std::isfinite(report.verification_residual)
            ? json(report.verification_residual)
            : json();
    j["warnings"] = report.warnings;
    if (report.reference_distance)
        j["reference"] = distance_to_json(*report.reference_distance);
    return j.dump(2) + "\n";
}

} // namespace expsum
