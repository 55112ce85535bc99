#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace mval::kernels {

/// Table of the arithmetic inner loops everything above is built on.
/// One scalar reference implementation always exists; on x86 an AVX2+FMA
/// variant is selected at runtime when the CPU supports it. All variants
/// agree to floating-point reduction-order tolerance (equivalence-tested),
/// and a fixed selection is deterministic run to run.
struct Backend {
    const char* name;

    /// sum_k a[k] * b[k]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// y[k] += alpha * x[k]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// sum_k x[k]
    double (*sum)(const double* x, std::size_t n);
    /// sum_k (x[k] - mean)^2
    double (*sq_dev_sum)(const double* x, std::size_t n, double mean);
    /// acc[k] += (x[k] - mean[k])^2
    void (*sq_dev_accum)(double* acc, const double* x, const double* mean, std::size_t n);
    /// y[k] *= x[k]
    void (*mul_inplace)(double* y, const double* x, std::size_t n);
    /// Upper triangle of row-major h (dim x dim): h += c * x * x^T
    void (*rank1_upper)(double* h, std::size_t dim, double c, const double* x);
    /// out[r] = dot(m_row_r, v) + bias for a row-major (rows x cols) matrix
    void (*matvec)(const double* m, std::size_t rows, std::size_t cols, const double* v,
                   double bias, double* out);
};

/// Currently selected backend. First call picks the best supported variant,
/// honouring the MVAL_KERNELS environment variable ("scalar" or "avx2").
const Backend& active();

/// Force a backend by name; returns false if it is not available on this CPU.
bool select(std::string_view name);

std::vector<std::string_view> available();

inline double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline void axpy(double alpha, const double* x, double* y, std::size_t n) {
    active().axpy(alpha, x, y, n);
}
inline double sum(const double* x, std::size_t n) { return active().sum(x, n); }
inline double sq_dev_sum(const double* x, std::size_t n, double mean) {
    return active().sq_dev_sum(x, n, mean);
}
inline void sq_dev_accum(double* acc, const double* x, const double* mean, std::size_t n) {
    active().sq_dev_accum(acc, x, mean, n);
}
inline void mul_inplace(double* y, const double* x, std::size_t n) {
    active().mul_inplace(y, x, n);
}
inline void rank1_upper(double* h, std::size_t dim, double c, const double* x) {
    active().rank1_upper(h, dim, c, x);
}
inline void matvec(const double* m, std::size_t rows, std::size_t cols, const double* v,
                   double bias, double* out) {
    active().matvec(m, rows, cols, v, bias, out);
}

namespace detail {
extern const Backend scalar_backend;
#if defined(MVAL_HAVE_AVX2)
extern const Backend avx2_backend;
#endif
} // namespace detail

} // namespace mval::kernels
