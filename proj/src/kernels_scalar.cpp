#include "mval/kernels.hpp"

namespace mval::kernels::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += a[k] * b[k];
    return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) y[k] += alpha * x[k];
}

double sum_scalar(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += x[k];
    return acc;
}

double sq_dev_sum_scalar(const double* x, std::size_t n, double mean) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = x[k] - mean;
        acc += d * d;
    }
    return acc;
}

void sq_dev_accum_scalar(double* acc, const double* x, const double* mean, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
        const double d = x[k] - mean[k];
        acc[k] += d * d;
    }
}

void mul_inplace_scalar(double* y, const double* x, std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) y[k] *= x[k];
}

void rank1_upper_scalar(double* h, std::size_t dim, double c, const double* x) {
    for (std::size_t i = 0; i < dim; ++i) {
        const double cxi = c * x[i];
        double* row = h + i * dim;
        for (std::size_t j = i; j < dim; ++j) row[j] += cxi * x[j];
    }
}

void matvec_scalar(const double* m, std::size_t rows, std::size_t cols, const double* v,
                   double bias, double* out) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = dot_scalar(m + r * cols, v, cols) + bias;
}

} // namespace

const Backend scalar_backend = {
    "scalar",         dot_scalar,         axpy_scalar,        sum_scalar,
    sq_dev_sum_scalar, sq_dev_accum_scalar, mul_inplace_scalar, rank1_upper_scalar,
    matvec_scalar,
};

} // namespace mval::kernels::detail
