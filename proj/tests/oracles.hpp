// Independent reference implementations used only by tests. Everything here
// is written naively and directly from the defining formulas, sharing no
// code with the library paths it checks (the selection oracles necessarily
// reuse the trainers, which are themselves validated against finite
// differences and the dual projected-gradient oracle below).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mval/dataset.hpp"
#include "mval/linear.hpp"
#include "mval/matrix.hpp"
#include "mval/rng.hpp"

namespace oracle {

// --- naive statistics -------------------------------------------------------

// Plain two-pass Bessel-corrected sample variance.
inline double sample_variance(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::invalid_argument("sample_variance: need >= 2 values");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(xs.size() - 1);
}

// Column variance of A = [P; N] stacked to 2n x n.
inline std::vector<double> v1_binary_naive(const mval::Matrix& p, const mval::Matrix& n_mat) {
    const std::size_t n = p.rows;
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> column;
        for (std::size_t i = 0; i < n; ++i) column.push_back(p(i, j));
        for (std::size_t i = 0; i < n; ++i) column.push_back(n_mat(i, j));
        out[j] = sample_variance(column);
    }
    return out;
}

// Row variance of B = P - N.
inline std::vector<double> v2_binary_naive(const mval::Matrix& p, const mval::Matrix& n_mat) {
    const std::size_t n = p.rows;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> row;
        for (std::size_t j = 0; j < n; ++j) row.push_back(p(i, j) - n_mat(i, j));
        out[i] = sample_variance(row);
    }
    return out;
}

// Multiclass V1: stack the K tensors along the first dimension (nK rows per
// (j, l) cell), take the per-cell variance, then average over l.
inline std::vector<double> v1_multiclass_naive(const std::vector<mval::Tensor3>& r) {
    const std::size_t k = r.size();
    const std::size_t n = r[0].d0;
    std::vector<double> out(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            std::vector<double> stacked;
            for (std::size_t c = 0; c < k; ++c)
                for (std::size_t i = 0; i < n; ++i) stacked.push_back(r[c](i, j, l));
            acc += sample_variance(stacked);
        }
        out[j] = acc / static_cast<double>(k);
    }
    return out;
}

// Multiclass V2: B = [R_1 - R_2, ..., R_K - R_1] laid out as n x nK x K;
// per-(i, l) variance across the nK concatenated columns, averaged over l.
inline std::vector<double> v2_multiclass_naive(const std::vector<mval::Tensor3>& r) {
    const std::size_t k = r.size();
    const std::size_t n = r[0].d0;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t l = 0; l < k; ++l) {
            std::vector<double> row;
            for (std::size_t c = 0; c < k; ++c) {
                const auto& lhs = r[c];
                const auto& rhs = r[(c + 1) % k];
                for (std::size_t j = 0; j < n; ++j) row.push_back(lhs(i, j, l) - rhs(i, j, l));
            }
            acc += sample_variance(row);
        }
        out[i] = acc / static_cast<double>(k);
    }
    return out;
}

// --- finite differences ------------------------------------------------------

// Central finite-difference gradient of f at x.
inline std::vector<double> central_diff(const std::function<double(const std::vector<double>&)>& f,
                                        std::vector<double> x, double h) {
    std::vector<double> g(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double keep = x[a];
        x[a] = keep + h;
        const double up = f(x);
        x[a] = keep - h;
        const double down = f(x);
        x[a] = keep;
        g[a] = (up - down) / (2.0 * h);
    }
    return g;
}

// --- SVM dual oracle ---------------------------------------------------------

// Projection onto {0 <= a <= C} intersected with {yhat . a = 0}: shift by a
// multiple of yhat before box-clipping and bisect the multiplier until the
// equality holds (continuous quadratic knapsack).
inline std::vector<double> project_dual(std::vector<double> a, const std::vector<double>& yhat,
                                        double c_box) {
    const auto residual = [&](double nu) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            s += yhat[i] * std::clamp(a[i] - nu * yhat[i], 0.0, c_box);
        return s;
    };
    double lo = -1.0, hi = 1.0;
    while (residual(lo) < 0.0) lo *= 2.0;  // residual is nonincreasing in nu
    while (residual(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    const double nu = 0.5 * (lo + hi);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = std::clamp(a[i] - nu * yhat[i], 0.0, c_box);
    return a;
}

struct SvmOracleResult {
    std::vector<double> w;
    double b = 0.0;
    double primal = 0.0;
};

// Accelerated projected-gradient descent on the SVM dual, fully independent
// of the SMO path. The intercept is recovered exactly afterwards by
// minimizing the piecewise-linear primal in b over its breakpoints.
inline SvmOracleResult svm_dual_oracle(const mval::Matrix& x, const std::vector<int>& y,
                                       double c_box, int iters = 20000) {
    const std::size_t n = x.rows;
    std::vector<double> yhat(n);
    for (std::size_t i = 0; i < n; ++i) yhat[i] = y[i] == 1 ? 1.0 : -1.0;

    std::vector<double> q(n * n);
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t d = 0; d < x.cols; ++d) dot += x(i, d) * x(j, d);
            q[i * n + j] = yhat[i] * yhat[j] * dot;
            if (i == j) trace += q[i * n + j];
        }
    const double step = 1.0 / std::max(trace, 1e-12);  // 1/L with L <= tr(Q)

    std::vector<double> alpha(n, 0.0), momentum = alpha, grad(n);
    double t_acc = 1.0;
    for (int it = 0; it < iters; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double g = -1.0;
            for (std::size_t j = 0; j < n; ++j) g += q[i * n + j] * momentum[j];
            grad[i] = g;
        }
        std::vector<double> next(n);
        for (std::size_t i = 0; i < n; ++i) next[i] = momentum[i] - step * grad[i];
        next = project_dual(std::move(next), yhat, c_box);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_acc * t_acc));
        for (std::size_t i = 0; i < n; ++i)
            momentum[i] = next[i] + (t_acc - 1.0) / t_next * (next[i] - alpha[i]);
        alpha = std::move(next);
        t_acc = t_next;
    }

    SvmOracleResult res;
    res.w.assign(x.cols, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t d = 0; d < x.cols; ++d) res.w[d] += alpha[i] * yhat[i] * x(i, d);

    // Optimal intercept for this w: the hinge sum is piecewise linear in b,
    // so the minimum sits on a breakpoint b = yhat_i - w.x_i.
    std::vector<double> breakpoints(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dot = 0.0;
        for (std::size_t d = 0; d < x.cols; ++d) dot += res.w[d] * x(i, d);
        breakpoints[i] = yhat[i] - dot;
    }
    const auto hinge_sum = [&](double b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double dot = 0.0;
            for (std::size_t d = 0; d < x.cols; ++d) dot += res.w[d] * x(i, d);
            s += std::max(0.0, 1.0 - yhat[i] * (dot + b));
        }
        return s;
    };
    res.b = breakpoints[0];
    double best = hinge_sum(res.b);
    for (double b : breakpoints)
        if (const double v = hinge_sum(b); v < best) {
            best = v;
            res.b = b;
        }
    double w_norm = 0.0;
    for (double v : res.w) w_norm += v * v;
    res.primal = 0.5 * w_norm + c_box * best;
    return res;
}

// --- exhaustive selection oracles -------------------------------------------

// Entropy written straight from the formula (same clamping rule the library
// documents, reimplemented here).
inline double entropy_naive(const std::vector<double>& p) {
    double e = 0.0;
    for (double v : p) {
        const double q = std::min(std::max(v, 1e-12), 1.0 - 1e-12);
        e -= q * std::log(q);
    }
    return e;
}

// Retrains on L plus the candidate under one pseudo-label and returns the
// full posterior over the pool, straight from predict_proba.
inline mval::Matrix retrain_proba(const mval::Dataset& ds, const mval::ActiveState& state,
                                  std::size_t candidate_pos, int pseudo,
                                  const mval::TrainConfig& cfg) {
    std::vector<std::size_t> rows = state.labeled;
    rows.push_back(state.unlabeled[candidate_pos]);
    mval::Matrix x = mval::gather_rows(ds.features, rows);
    std::vector<int> y = mval::gather_labels(ds.labels, state.labeled);
    y.push_back(pseudo);
    const mval::LinearModel model = mval::train_logreg(x, y, cfg);
    return mval::predict_proba(model, mval::gather_rows(ds.features, state.unlabeled));
}

// Same retraining, reduced to P(class1 | x_j) per pool point. With svm true
// the row comes from svm_pseudo_proba over decision values instead.
inline std::vector<double> retrain_row(const mval::Dataset& ds, const mval::ActiveState& state,
                                       std::size_t candidate_pos, int pseudo,
                                       const mval::TrainConfig& cfg, bool svm = false) {
    if (svm) {
        std::vector<std::size_t> rows = state.labeled;
        rows.push_back(state.unlabeled[candidate_pos]);
        mval::Matrix x = mval::gather_rows(ds.features, rows);
        std::vector<int> y = mval::gather_labels(ds.labels, state.labeled);
        y.push_back(pseudo);
        const mval::LinearModel model = mval::train_svm(x, y, cfg);
        const auto f =
            mval::decision_values(model, mval::gather_rows(ds.features, state.unlabeled));
        std::vector<double> out(f.size());
        for (std::size_t j = 0; j < f.size(); ++j) out[j] = mval::svm_pseudo_proba(f[j]);
        return out;
    }
    const mval::Matrix proba = retrain_proba(ds, state, candidate_pos, pseudo, cfg);
    std::vector<double> out(proba.rows);
    for (std::size_t j = 0; j < proba.rows; ++j) out[j] = proba(j, 1);
    return out;
}

// Exhaustive binary MVAL enumeration: all 2n retrainings, entropy weights,
// naive column/row variances, fused argmax with lowest-index ties.
inline std::size_t mval_select_naive(const mval::Dataset& ds, const mval::ActiveState& state,
                                     const mval::TrainConfig& cfg) {
    const std::size_t n = state.unlabeled.size();
    if (n == 1) return 0;

    const mval::Matrix pool = mval::gather_rows(ds.features, state.unlabeled);
    const mval::LinearModel current =
        mval::train_logreg(mval::gather_rows(ds.features, state.labeled),
                           mval::gather_labels(ds.labels, state.labeled), cfg);
    const mval::Matrix p0 = mval::predict_proba(current, pool);

    mval::Matrix p_hat(n, n), n_hat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto pos_row = retrain_row(ds, state, i, 1, cfg);
        const auto neg_row = retrain_row(ds, state, i, 0, cfg);
        for (std::size_t j = 0; j < n; ++j) {
            const double e_j = entropy_naive({p0(j, 0), p0(j, 1)});
            p_hat(i, j) = e_j * pos_row[j];
            n_hat(i, j) = e_j * neg_row[j];
        }
    }

    const auto v1 = v1_binary_naive(p_hat, n_hat);
    const auto v2 = v2_binary_naive(p_hat, n_hat);
    std::size_t best = 0;
    for (std::size_t j = 1; j < n; ++j)
        if (v1[j] * v2[j] > v1[best] * v2[best]) best = j;
    return best;
}

// Exhaustive EER enumeration: expected 0/1-style post-retraining risk over
// the rest of the pool, weighted by the current posterior of each
// hypothesized label; argmin. With ueer true each risk is additionally
// multiplied by the candidate's current predictive entropy.
inline std::size_t eer_select_naive(const mval::Dataset& ds, const mval::ActiveState& state,
                                    const mval::TrainConfig& cfg, bool ueer = false) {
    const std::size_t n = state.unlabeled.size();
    if (n == 1) return 0;
    const auto k = static_cast<std::size_t>(ds.n_classes);

    const mval::Matrix pool = mval::gather_rows(ds.features, state.unlabeled);
    const mval::LinearModel current =
        mval::train_logreg(mval::gather_rows(ds.features, state.labeled),
                           mval::gather_labels(ds.labels, state.labeled), cfg);
    const mval::Matrix p0 = mval::predict_proba(current, pool);

    std::vector<double> risk(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t label = 0; label < k; ++label) {
            std::vector<std::size_t> rows = state.labeled;
            rows.push_back(state.unlabeled[i]);
            std::vector<int> y = mval::gather_labels(ds.labels, state.labeled);
            y.push_back(static_cast<int>(label));
            const mval::LinearModel retrained =
                mval::train_logreg(mval::gather_rows(ds.features, rows), y, cfg);
            const mval::Matrix proba = mval::predict_proba(retrained, pool);
            double err = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                double p_max = 0.0;
                for (std::size_t l = 0; l < k; ++l) p_max = std::max(p_max, proba(j, l));
                err += 1.0 - p_max;
            }
            risk[i] += p0(i, label) * err;
        }

    if (ueer)
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> row(k);
            for (std::size_t l = 0; l < k; ++l) row[l] = p0(i, l);
            risk[i] *= entropy_naive(row);
        }

    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (risk[i] < risk[best]) best = i;
    return best;
}

// --- random test-data generators ----------------------------------------------

inline double uniform01(mval::Rng& rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

// Standard normal via Box-Muller.
inline double gaussian(mval::Rng& rng) {
    const double u1 = std::max(uniform01(rng), 1e-300);
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793 * u2);
}

// K gaussian class clusters spread around a circle; labels follow clusters
// so small labeled sets are still learnable.
inline mval::Dataset random_dataset(mval::Rng& rng, std::size_t rows, std::size_t dims, int k,
                                    double spread = 2.0) {
    mval::Dataset ds;
    ds.features = mval::Matrix(rows, dims);
    ds.labels.resize(rows);
    ds.n_classes = k;
    ds.name = "random";
    for (std::size_t r = 0; r < rows; ++r) {
        const int label = r < static_cast<std::size_t>(k)
                              ? static_cast<int>(r)  // guarantee every class appears
                              : static_cast<int>(rng.below(static_cast<std::size_t>(k)));
        ds.labels[r] = label;
        const double angle = 2.0 * 3.141592653589793 * label / k;
        for (std::size_t d = 0; d < dims; ++d) {
            const double center = d == 0 ? spread * std::cos(angle)
                                 : d == 1 ? spread * std::sin(angle)
                                          : 0.0;
            ds.features(r, d) = center + gaussian(rng);
        }
    }
    return ds;
}

// Active state over the whole dataset: one labeled seed per class, the rest
// form the pool.
inline mval::ActiveState random_state(const mval::Dataset& ds, mval::Rng& rng) {
    std::vector<std::size_t> all(ds.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return mval::seed_initial(ds, all, rng.next());
}

// As above, then reveals random pool points until n_labeled rows are labeled
// (every class stays covered because seeds are never removed).
inline mval::ActiveState random_state(const mval::Dataset& ds, std::size_t n_labeled,
                                      std::uint64_t seed) {
    std::vector<std::size_t> all(ds.rows());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    mval::ActiveState st = mval::seed_initial(ds, all, seed);
    mval::Rng rng(mval::mix_seed(seed, 17));
    while (st.labeled.size() < n_labeled && !st.unlabeled.empty())
        st.reveal(ds, rng.below(st.unlabeled.size()));
    return st;
}

} // namespace oracle
