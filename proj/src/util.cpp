#include "mgtkit/csv.hpp"
#include "mgtkit/digest.hpp"
#include "mgtkit/errors.hpp"
#include "mgtkit/linalg.hpp"
#include "mgtkit/rng.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mgtkit {

Rng Rng::fork(std::uint64_t seed, std::string_view stream) {
    return Rng(seed ^ fnv1a64(stream));
}

double Rng::normal(double mean, double stddev) {
    // Box-Muller; u1 shifted into (0, 1] so log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    return mean + stddev * z;
}

std::size_t Rng::below(std::size_t n) {
    if (n == 0) throw std::logic_error("Rng::below(0)");
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return static_cast<std::size_t>(x % bound);
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return out;
}

std::string digest_string(std::string_view bytes) {
    return "fnv1a64:" + hex64(fnv1a64(bytes));
}

std::string digest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot read file for digest: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return digest_string(buf.str());
}

double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

double norm_sq(std::span<const double> x) { return dot(x, x); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

Vec matvec(const Mat& m, std::span<const double> x) {
    Vec out(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) out[i] = dot(m.row(i), x);
    return out;
}

Vec matvec_transposed(const Mat& m, std::span<const double> y) {
    Vec out(m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) axpy(y[i], m.row(i), out);
    return out;
}

void add_outer(Mat& acc, std::span<const double> y, std::span<const double> x) {
    for (std::size_t i = 0; i < acc.rows; ++i) axpy(y[i], x, acc.row(i));
}

bool all_finite(std::span<const double> x) {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw NumericError("failed to format double");
    return std::string(buf, ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), width_(header.size()) {
    if (!out_) throw DataError("cannot open CSV for writing: " + path);
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) {
        throw DataError("CSV row width mismatch in " + path_);
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << csv_escape(fields[i]);
    }
    out_ << '\n';
}

void CsvWriter::close() {
    out_.flush();
    out_.close();
}

}  // namespace mgtkit
