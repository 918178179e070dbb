#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mgtkit {

using Vec = std::vector<double>;

/// Dense row-major matrix. Small enough on purpose: everything the toolkit
/// trains fits comfortably in a few megabytes.
struct Mat {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Vec a;

    Mat() = default;
    Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    std::span<double> row(std::size_t i) { return {a.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {a.data() + i * cols, cols}; }
};

double dot(std::span<const double> x, std::span<const double> y);
double norm_sq(std::span<const double> x);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// m * x
Vec matvec(const Mat& m, std::span<const double> x);

/// m^T * y
Vec matvec_transposed(const Mat& m, std::span<const double> y);

/// acc += y * x^T
void add_outer(Mat& acc, std::span<const double> y, std::span<const double> x);

bool all_finite(std::span<const double> x);

}  // namespace mgtkit
