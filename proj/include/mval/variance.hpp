#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mval/rim.hpp"

namespace mval {

// Per-pool-instance criterion values; fused[j] == v1[j] * v2[j] exactly.
struct VarianceScores {
    std::vector<double> v1;
    std::vector<double> v2;
    std::vector<double> fused;
};

// All variances below are Bessel-corrected sample variances computed with a
// numerically stable two-pass scheme (mean first, then squared deviations).

// Column variance of A = [P; N] (2n x n): per pool instance j, the spread of
// its predicted posterior across all 2n retrainings. v1[j] uses mean 1/(2n)
// and divisor 1/(2n-1).
std::vector<double> v1_binary(const BinaryRims& r);

// Row variance of B = P - N (n x n): per candidate i, how much flipping its
// pseudo-label perturbs predictions across the pool. Divisor 1/(n-1); throws
// for n < 2.
std::vector<double> v2_binary(const BinaryRims& r);

// Multiclass V1: stack the K tensors into A (nK x n x K), take the sample
// variance over the first dimension per (j, l), then average over l.
std::vector<double> v1_multiclass(const MulticlassRims& r);

// Multiclass V2: concatenate the K cyclic adjacent differences
// [R_1 - R_2, ..., R_K - R_1] into B (n x nK x K), take the sample variance
// over the second dimension per (i, l), then average over l.
std::vector<double> v2_multiclass(const MulticlassRims& r);

// Elementwise product plus its argmax with deterministic lowest-index
// tie-breaking.
std::pair<std::vector<double>, std::size_t> fuse(const std::vector<double>& v1,
                                                 const std::vector<double>& v2);

// First index attaining the maximum (the tie-break rule used everywhere).
std::size_t argmax_lowest(const std::vector<double>& scores);

} // namespace mval
