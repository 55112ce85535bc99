#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mval {

/// Dense row-major matrix of doubles. Plain aggregate-style container: the
/// numerical code indexes it directly and hands raw rows to the kernels.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }

    bool operator==(const Matrix&) const = default;
};

/// Dense rank-3 tensor, laid out with the last index fastest. For a
/// retraining tensor indexed (candidate i, pool point j, class l) this
/// makes each candidate's (j, l) plane one contiguous block.
struct Tensor3 {
    std::size_t d0 = 0, d1 = 0, d2 = 0;
    std::vector<double> data;

    Tensor3() = default;
    Tensor3(std::size_t n0, std::size_t n1, std::size_t n2, double fill = 0.0)
        : d0(n0), d1(n1), d2(n2), data(n0 * n1 * n2, fill) {}

    double& operator()(std::size_t i, std::size_t j, std::size_t l) {
        return data[(i * d1 + j) * d2 + l];
    }
    double operator()(std::size_t i, std::size_t j, std::size_t l) const {
        return data[(i * d1 + j) * d2 + l];
    }

    /// Contiguous (d1 x d2) slice at fixed first index.
    std::span<double> plane(std::size_t i) { return {data.data() + i * d1 * d2, d1 * d2}; }
    std::span<const double> plane(std::size_t i) const {
        return {data.data() + i * d1 * d2, d1 * d2};
    }

    bool operator==(const Tensor3&) const = default;
};

} // namespace mval
