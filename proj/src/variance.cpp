#include "mval/variance.hpp"

#include <stdexcept>

#include "mval/kernels.hpp"

namespace mval {

std::vector<double> v1_binary(const BinaryRims& r) {
    const std::size_t n = r.pool_size();
    if (n < 1) throw std::invalid_argument("v1_binary: empty pool");

    // Column means over the 2n stacked rows, then squared deviations.
    std::vector<double> mean(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        kernels::axpy(1.0, r.P.row(i), mean.data(), n);
        kernels::axpy(1.0, r.N.row(i), mean.data(), n);
    }
    const double inv_rows = 1.0 / static_cast<double>(2 * n);
    for (double& m : mean) m *= inv_rows;

    std::vector<double> acc(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        kernels::sq_dev_accum(acc.data(), r.P.row(i), mean.data(), n);
        kernels::sq_dev_accum(acc.data(), r.N.row(i), mean.data(), n);
    }
    const double bessel = 1.0 / static_cast<double>(2 * n - 1);
    for (double& v : acc) v *= bessel;
    return acc;
}

std::vector<double> v2_binary(const BinaryRims& r) {
    const std::size_t n = r.pool_size();
    if (n < 2) throw std::invalid_argument("v2_binary: row variance needs a pool of >= 2");

    std::vector<double> v2(n);
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(r.P.row(i), r.P.row(i) + n, row.data());
        kernels::axpy(-1.0, r.N.row(i), row.data(), n);  // row of B = P - N
        const double mean = kernels::sum(row.data(), n) / static_cast<double>(n);
        v2[i] = kernels::sq_dev_sum(row.data(), n, mean) / static_cast<double>(n - 1);
    }
    return v2;
}

std::vector<double> v1_multiclass(const MulticlassRims& r) {
    const std::size_t n = r.pool_size();
    const std::size_t k = r.n_classes();
    if (n < 1 || k < 2) throw std::invalid_argument("v1_multiclass: need n >= 1 and K >= 2");

    // Means over the nK stacked rows, per (j, l) cell; planes are contiguous
    // (j, l) slabs so whole planes accumulate at once.
    const std::size_t cells = n * k;
    std::vector<double> mean(cells, 0.0);
    for (const auto& tensor : r.R)
        for (std::size_t i = 0; i < n; ++i)
            kernels::axpy(1.0, tensor.plane(i).data(), mean.data(), cells);
    const double inv_rows = 1.0 / static_cast<double>(n * k);
    for (double& m : mean) m *= inv_rows;

    std::vector<double> acc(cells, 0.0);
    for (const auto& tensor : r.R)
        for (std::size_t i = 0; i < n; ++i)
            kernels::sq_dev_accum(acc.data(), tensor.plane(i).data(), mean.data(), cells);

    const double bessel = 1.0 / static_cast<double>(n * k - 1);
    std::vector<double> v1(n);
    for (std::size_t j = 0; j < n; ++j)
        v1[j] = kernels::sum(acc.data() + j * k, k) * bessel / static_cast<double>(k);
    return v1;
}

std::vector<double> v2_multiclass(const MulticlassRims& r) {
    const std::size_t n = r.pool_size();
    const std::size_t k = r.n_classes();
    if (k < 2) throw std::invalid_argument("v2_multiclass: need K >= 2");
    if (n * k < 2) throw std::invalid_argument("v2_multiclass: variance needs nK >= 2");

    std::vector<double> v2(n);
    std::vector<double> mean(k), acc(k);
    for (std::size_t i = 0; i < n; ++i) {
        // Row i of B spans the K cyclic difference blocks; accumulate per-l
        // sums and squared deviations across all nK block columns. Two
        // passes, recomputing the cheap diffs instead of materializing B.
        std::fill(mean.begin(), mean.end(), 0.0);
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t c = 0; c < k; ++c) {
            const auto lhs = r.R[c].plane(i);
            const auto rhs = r.R[(c + 1) % k].plane(i);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < k; ++l)
                    mean[l] += lhs[j * k + l] - rhs[j * k + l];
        }
        const double inv_cols = 1.0 / static_cast<double>(n * k);
        for (double& m : mean) m *= inv_cols;
        for (std::size_t c = 0; c < k; ++c) {
            const auto lhs = r.R[c].plane(i);
            const auto rhs = r.R[(c + 1) % k].plane(i);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < k; ++l) {
                    const double d = lhs[j * k + l] - rhs[j * k + l] - mean[l];
                    acc[l] += d * d;
                }
        }
        const double bessel = 1.0 / static_cast<double>(n * k - 1);
        v2[i] = kernels::sum(acc.data(), k) * bessel / static_cast<double>(k);
    }
    return v2;
}

std::size_t argmax_lowest(const std::vector<double>& scores) {
    if (scores.empty()) throw std::invalid_argument("argmax_lowest: empty scores");
    std::size_t best = 0;
    for (std::size_t j = 1; j < scores.size(); ++j)
        if (scores[j] > scores[best]) best = j;
    return best;
}

std::pair<std::vector<double>, std::size_t> fuse(const std::vector<double>& v1,
                                                 const std::vector<double>& v2) {
    if (v1.size() != v2.size() || v1.empty())
        throw std::invalid_argument("fuse: score vectors must be non-empty and equal length");
    std::vector<double> scores(v1.size());
    for (std::size_t j = 0; j < v1.size(); ++j) scores[j] = v1[j] * v2[j];
    const std::size_t best = argmax_lowest(scores);
    return {std::move(scores), best};
}

} // namespace mval
