// AVX2 + FMA variants of the arithmetic kernels. Compiled with -mavx2 -mfma;
// only dispatched to when the running CPU reports both features.

#include "mval/kernels.hpp"

#include <immintrin.h>

namespace mval::kernels::detail {
namespace {

inline double hsum256(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 8 <= n; k += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
    }
    for (; k + 4 <= n; k += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    double acc = hsum256(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) acc += a[k] * b[k];
    return acc;
}

void axpy_avx2(double alpha, const double* x, double* y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d vy = _mm256_loadu_pd(y + k);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + k), vy);
        _mm256_storeu_pd(y + k, vy);
    }
    for (; k < n; ++k) y[k] += alpha * x[k];
}

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + k));
    double s = hsum256(acc);
    for (; k < n; ++k) s += x[k];
    return s;
}

double sq_dev_sum_avx2(const double* x, std::size_t n, double mean) {
    const __m256d vm = _mm256_set1_pd(mean);
    __m256d acc = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + k), vm);
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum256(acc);
    for (; k < n; ++k) {
        const double d = x[k] - mean;
        s += d * d;
    }
    return s;
}

void sq_dev_accum_avx2(double* acc, const double* x, const double* mean, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + k), _mm256_loadu_pd(mean + k));
        __m256d va = _mm256_loadu_pd(acc + k);
        va = _mm256_fmadd_pd(d, d, va);
        _mm256_storeu_pd(acc + k, va);
    }
    for (; k < n; ++k) {
        const double d = x[k] - mean[k];
        acc[k] += d * d;
    }
}

void mul_inplace_avx2(double* y, const double* x, std::size_t n) {
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4)
        _mm256_storeu_pd(y + k, _mm256_mul_pd(_mm256_loadu_pd(y + k), _mm256_loadu_pd(x + k)));
    for (; k < n; ++k) y[k] *= x[k];
}

void rank1_upper_avx2(double* h, std::size_t dim, double c, const double* x) {
    for (std::size_t i = 0; i < dim; ++i) {
        const double cxi = c * x[i];
        const __m256d vc = _mm256_set1_pd(cxi);
        double* row = h + i * dim;
        std::size_t j = i;
        for (; j + 4 <= dim; j += 4) {
            __m256d vr = _mm256_loadu_pd(row + j);
            vr = _mm256_fmadd_pd(vc, _mm256_loadu_pd(x + j), vr);
            _mm256_storeu_pd(row + j, vr);
        }
        for (; j < dim; ++j) row[j] += cxi * x[j];
    }
}

void matvec_avx2(const double* m, std::size_t rows, std::size_t cols, const double* v,
                 double bias, double* out) {
    for (std::size_t r = 0; r < rows; ++r) out[r] = dot_avx2(m + r * cols, v, cols) + bias;
}

} // namespace

const Backend avx2_backend = {
    "avx2",          dot_avx2,         axpy_avx2,        sum_avx2,
    sq_dev_sum_avx2, sq_dev_accum_avx2, mul_inplace_avx2, rank1_upper_avx2,
    matvec_avx2,
};

} // namespace mval::kernels::detail
