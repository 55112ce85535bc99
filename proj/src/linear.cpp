#include "mval/linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mval/kernels.hpp"

namespace mval {
namespace {

// log(1 + exp(t)) without overflow for large |t|.
double log1p_exp(double t) {
    if (t > 0.0) return t + std::log1p(std::exp(-t));
    return std::log1p(std::exp(t));
}

// 1 / (1 + exp(-t)) evaluated from the side that cannot overflow.
double sigmoid(double t) {
    if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
    const double e = std::exp(t);
    return e / (1.0 + e);
}

int infer_classes(const std::vector<int>& y) {
    if (y.empty()) throw std::invalid_argument("train: empty label vector");
    int k_max = 0;
    for (int label : y) {
        if (label < 0) throw std::invalid_argument("train: negative class id");
        k_max = std::max(k_max, label);
    }
    const int k = k_max + 1;
    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (int label : y) seen[static_cast<std::size_t>(label)] = true;
    for (int c = 0; c < k; ++c)
        if (!seen[static_cast<std::size_t>(c)])
            throw std::invalid_argument("train: class " + std::to_string(c) +
                                        " has no instances");
    if (k < 2) throw std::invalid_argument("train: needs at least 2 classes");
    return k;
}

// X with a constant 1 column appended, so the intercept rides along in every
// dot product as the last parameter coordinate.
Matrix augment_ones(const Matrix& X) {
    Matrix out(X.rows, X.cols + 1);
    for (std::size_t r = 0; r < X.rows; ++r) {
        const double* src = X.row(r);
        double* dst = out.row(r);
        std::copy(src, src + X.cols, dst);
        dst[X.cols] = 1.0;
    }
    return out;
}

// Solves A x = rhs for symmetric positive definite A (full row-major
// storage, factorized in place). Returns false if A is not numerically PD.
bool cholesky_solve(std::vector<double>& a, std::size_t m, std::vector<double>& rhs) {
    for (std::size_t j = 0; j < m; ++j) {
        double* row_j = a.data() + j * m;
        const double diag = row_j[j] - kernels::dot(row_j, row_j, j);
        if (!(diag > 0.0)) return false;
        row_j[j] = std::sqrt(diag);
        for (std::size_t i = j + 1; i < m; ++i) {
            double* row_i = a.data() + i * m;
            row_i[j] = (row_i[j] - kernels::dot(row_i, row_j, j)) / row_j[j];
        }
    }
    for (std::size_t i = 0; i < m; ++i)  // forward: L z = rhs
        rhs[i] = (rhs[i] - kernels::dot(a.data() + i * m, rhs.data(), i)) / a[i * m + i];
    for (std::size_t ii = m; ii-- > 0;) {  // backward: L^T x = z
        double s = rhs[ii];
        for (std::size_t j = ii + 1; j < m; ++j) s -= a[j * m + ii] * rhs[j];
        rhs[ii] = s / a[ii * m + ii];
    }
    return true;
}

// --- objective/gradient cores on the augmented design matrix ---------------
// params spans d+1 entries per class row: [w, b]; only w enters ||.||^2.

double bin_obj_aug(const Matrix& xa, const std::vector<int>& y, std::span<const double> v,
                   double reg_c) {
    const std::size_t d = xa.cols - 1;
    double obj = 0.5 * kernels::dot(v.data(), v.data(), d);
    for (std::size_t i = 0; i < xa.rows; ++i) {
        const double z = kernels::dot(xa.row(i), v.data(), xa.cols);
        const double yhat = y[i] == 1 ? 1.0 : -1.0;
        obj += reg_c * log1p_exp(-yhat * z);
    }
    return obj;
}

void bin_grad_aug(const Matrix& xa, const std::vector<int>& y, std::span<const double> v,
                  double reg_c, std::span<double> g) {
    const std::size_t d = xa.cols - 1;
    std::fill(g.begin(), g.end(), 0.0);
    std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d), g.begin());
    for (std::size_t i = 0; i < xa.rows; ++i) {
        const double z = kernels::dot(xa.row(i), v.data(), xa.cols);
        const double yhat = y[i] == 1 ? 1.0 : -1.0;
        const double coef = -reg_c * yhat * sigmoid(-yhat * z);
        kernels::axpy(coef, xa.row(i), g.data(), xa.cols);
    }
}

// Softmax of one logit row, stabilized by the row max.
void softmax_row(const double* z, int k, double* out) {
    double z_max = z[0];
    for (int c = 1; c < k; ++c) z_max = std::max(z_max, z[c]);
    double sum = 0.0;
    for (int c = 0; c < k; ++c) {
        out[c] = std::exp(z[c] - z_max);
        sum += out[c];
    }
    for (int c = 0; c < k; ++c) out[c] /= sum;
}

double multi_obj_aug(const Matrix& xa, const std::vector<int>& y, int k,
                     std::span<const double> params, double reg_c) {
    const std::size_t p = xa.cols;
    const std::size_t d = p - 1;
    double obj = 0.0;
    for (int c = 0; c < k; ++c)
        obj += 0.5 * kernels::dot(params.data() + static_cast<std::size_t>(c) * p,
                                  params.data() + static_cast<std::size_t>(c) * p, d);
    std::vector<double> z(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < xa.rows; ++i) {
        double z_max = -std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            z[static_cast<std::size_t>(c)] =
                kernels::dot(xa.row(i), params.data() + static_cast<std::size_t>(c) * p, p);
            z_max = std::max(z_max, z[static_cast<std::size_t>(c)]);
        }
        double sum = 0.0;
        for (int c = 0; c < k; ++c) sum += std::exp(z[static_cast<std::size_t>(c)] - z_max);
        obj += reg_c * (z_max + std::log(sum) - z[static_cast<std::size_t>(y[i])]);
    }
    return obj;
}

void multi_grad_aug(const Matrix& xa, const std::vector<int>& y, int k,
                    std::span<const double> params, double reg_c, std::span<double> g) {
    const std::size_t p = xa.cols;
    const std::size_t d = p - 1;
    std::fill(g.begin(), g.end(), 0.0);
    for (int c = 0; c < k; ++c)
        std::copy(params.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(c) * p),
                  params.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(c) * p + d),
                  g.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(c) * p));
    std::vector<double> z(static_cast<std::size_t>(k)), s(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < xa.rows; ++i) {
        for (int c = 0; c < k; ++c)
            z[static_cast<std::size_t>(c)] =
                kernels::dot(xa.row(i), params.data() + static_cast<std::size_t>(c) * p, p);
        softmax_row(z.data(), k, s.data());
        for (int c = 0; c < k; ++c) {
            const double coef =
                reg_c * (s[static_cast<std::size_t>(c)] - (y[i] == c ? 1.0 : 0.0));
            kernels::axpy(coef, xa.row(i), g.data() + static_cast<std::size_t>(c) * p, p);
        }
    }
}

double norm2(std::span<const double> v) {
    return std::sqrt(kernels::dot(v.data(), v.data(), v.size()));
}

// Backtracking line search on obj with the Armijo condition; returns the
// accepted step (0 if no decrease was found down to the minimum step).
template <typename Objective>
double armijo_step(const Objective& obj_at, double obj0, double directional_deriv) {
    double step = 1.0;
    for (int halving = 0; halving < 60; ++halving) {
        const double obj = obj_at(step);
        if (std::isfinite(obj) && obj <= obj0 + 1e-4 * step * directional_deriv) return step;
        step *= 0.5;
    }
    return 0.0;
}

// Shared damped-Newton driver: minimizes obj(v) with analytic grad/hessian
// callbacks until the gradient norm drops below tol.
template <typename Obj, typename Grad, typename Hess>
bool newton_minimize(std::vector<double>& v, const Obj& obj_fn, const Grad& grad_fn,
                     const Hess& hess_fn, const TrainConfig& cfg, int& iterations) {
    const std::size_t m = v.size();
    std::vector<double> g(m), h(m * m), step(m), trial(m);
    iterations = 0;
    for (int it = 0; it < cfg.max_iter; ++it) {
        const double obj0 = obj_fn(v);
        if (!std::isfinite(obj0)) throw std::runtime_error("train_logreg: non-finite objective");
        grad_fn(v, g);
        if (norm2(g) < cfg.tol) return true;

        hess_fn(v, h);
        step = g;
        if (!cholesky_solve(h, m, step)) throw std::runtime_error("train_logreg: Hessian not PD");
        for (double& s : step) s = -s;

        const double dderiv = kernels::dot(g.data(), step.data(), m);
        const double accepted = armijo_step(
            [&](double t) {
                for (std::size_t a = 0; a < m; ++a) trial[a] = v[a] + t * step[a];
                return obj_fn(trial);
            },
            obj0, dderiv);
        if (accepted == 0.0) return false;  // stalled short of tol
        for (std::size_t a = 0; a < m; ++a) v[a] += accepted * step[a];
        ++iterations;
    }
    grad_fn(v, g);
    return norm2(g) < cfg.tol;
}

LinearModel train_logreg_binary(const Matrix& xa, const std::vector<int>& y,
                                const TrainConfig& cfg) {
    const std::size_t p = xa.cols;
    const std::size_t d = p - 1;
    const double ridge = 1e-10 * (1.0 + cfg.reg_c);

    std::vector<double> v(p, 0.0);
    int iterations = 0;
    const bool converged = newton_minimize(
        v, [&](const std::vector<double>& params) { return bin_obj_aug(xa, y, params, cfg.reg_c); },
        [&](const std::vector<double>& params, std::vector<double>& g) {
            bin_grad_aug(xa, y, params, cfg.reg_c, g);
        },
        [&](const std::vector<double>& params, std::vector<double>& h) {
            std::fill(h.begin(), h.end(), 0.0);
            for (std::size_t a = 0; a < d; ++a) h[a * p + a] = 1.0;
            for (std::size_t a = 0; a < p; ++a) h[a * p + a] += ridge;
            for (std::size_t i = 0; i < xa.rows; ++i) {
                const double z = kernels::dot(xa.row(i), params.data(), p);
                const double s = sigmoid(z);
                kernels::rank1_upper(h.data(), p, cfg.reg_c * s * (1.0 - s), xa.row(i));
            }
            for (std::size_t r = 1; r < p; ++r)  // mirror the upper triangle
                for (std::size_t c = 0; c < r; ++c) h[r * p + c] = h[c * p + r];
        },
        cfg, iterations);

    LinearModel model;
    model.kind = ModelKind::logreg;
    model.n_classes = 2;
    model.reg_c = cfg.reg_c;
    model.converged = converged;
    model.iterations = iterations;
    model.weights = Matrix(1, d);
    std::copy(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(d), model.weights.row(0));
    model.intercepts = {v[d]};
    return model;
}

LinearModel train_logreg_multinomial(const Matrix& xa, const std::vector<int>& y, int k,
                                     const TrainConfig& cfg) {
    const std::size_t p = xa.cols;
    const std::size_t d = p - 1;
    const std::size_t m = static_cast<std::size_t>(k) * p;
    // The softmax objective is flat along a common shift of all intercepts;
    // the ridge makes the Hessian PD, and since the gradient is orthogonal
    // to that shift the iterates keep a canonical (zero-sum) intercept.
    const double ridge = 1e-10 * (1.0 + cfg.reg_c);

    std::vector<double> sprob(static_cast<std::size_t>(k)), z(static_cast<std::size_t>(k));
    std::vector<double> v(m, 0.0);
    int iterations = 0;
    const bool converged = newton_minimize(
        v,
        [&](const std::vector<double>& params) {
            return multi_obj_aug(xa, y, k, params, cfg.reg_c);
        },
        [&](const std::vector<double>& params, std::vector<double>& g) {
            multi_grad_aug(xa, y, k, params, cfg.reg_c, g);
        },
        [&](const std::vector<double>& params, std::vector<double>& h) {
            std::fill(h.begin(), h.end(), 0.0);
            for (int c = 0; c < k; ++c)
                for (std::size_t a = 0; a < d; ++a) {
                    const std::size_t idx = static_cast<std::size_t>(c) * p + a;
                    h[idx * m + idx] = 1.0;
                }
            for (std::size_t a = 0; a < m; ++a) h[a * m + a] += ridge;
            for (std::size_t i = 0; i < xa.rows; ++i) {
                const double* x = xa.row(i);
                for (int c = 0; c < k; ++c)
                    z[static_cast<std::size_t>(c)] =
                        kernels::dot(x, params.data() + static_cast<std::size_t>(c) * p, p);
                softmax_row(z.data(), k, sprob.data());
                for (int ck = 0; ck < k; ++ck)
                    for (int cl = 0; cl < k; ++cl) {
                        const double coef = cfg.reg_c * sprob[static_cast<std::size_t>(ck)] *
                                            ((ck == cl ? 1.0 : 0.0) -
                                             sprob[static_cast<std::size_t>(cl)]);
                        if (coef == 0.0) continue;
                        for (std::size_t a = 0; a < p; ++a) {
                            double* row = h.data() +
                                          (static_cast<std::size_t>(ck) * p + a) * m +
                                          static_cast<std::size_t>(cl) * p;
                            kernels::axpy(coef * x[a], x, row, p);
                        }
                    }
            }
        },
        cfg, iterations);

    LinearModel model;
    model.kind = ModelKind::logreg;
    model.n_classes = k;
    model.reg_c = cfg.reg_c;
    model.converged = converged;
    model.iterations = iterations;
    model.weights = Matrix(static_cast<std::size_t>(k), d);
    model.intercepts.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c) {
        const double* row = v.data() + static_cast<std::size_t>(c) * p;
        std::copy(row, row + d, model.weights.row(static_cast<std::size_t>(c)));
        model.intercepts[static_cast<std::size_t>(c)] = row[d];
    }
    return model;
}

void check_dims(const LinearModel& m, const Matrix& x, const char* who) {
    if (x.cols != m.dims())
        throw std::invalid_argument(std::string(who) + ": feature dimensionality " +
                                    std::to_string(x.cols) + " != model " +
                                    std::to_string(m.dims()));
}

} // namespace

LinearModel train_logreg(const Matrix& X, const std::vector<int>& y, const TrainConfig& cfg) {
    if (X.rows != y.size()) throw std::invalid_argument("train_logreg: rows != labels");
    if (cfg.reg_c <= 0.0 || cfg.tol <= 0.0 || cfg.max_iter < 1)
        throw std::invalid_argument("train_logreg: invalid config");
    const int k = infer_classes(y);
    const Matrix xa = augment_ones(X);
    return k == 2 ? train_logreg_binary(xa, y, cfg) : train_logreg_multinomial(xa, y, k, cfg);
}

LinearModel train_svm(const Matrix& X, const std::vector<int>& y, const TrainConfig& cfg) {
    if (X.rows != y.size()) throw std::invalid_argument("train_svm: rows != labels");
    if (cfg.reg_c <= 0.0 || cfg.tol <= 0.0 || cfg.max_iter < 1)
        throw std::invalid_argument("train_svm: invalid config");
    if (infer_classes(y) != 2) throw std::invalid_argument("train_svm: binary labels only");

    const std::size_t n = X.rows;
    const double c_box = cfg.reg_c;
    std::vector<double> yhat(n);
    for (std::size_t i = 0; i < n; ++i) yhat[i] = y[i] == 1 ? 1.0 : -1.0;

    // Dual: min 1/2 a^T Q a - e^T a, 0 <= a <= C, sum_i yhat_i a_i = 0,
    // with Q_ij = yhat_i yhat_j x_i.x_j. Solved by SMO on the maximal
    // violating pair (the unregularized intercept forces pair updates; a
    // single coordinate cannot move without breaking the equality).
    std::vector<double> q(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const double v = yhat[i] * yhat[j] * kernels::dot(X.row(i), X.row(j), X.cols);
            q[i * n + j] = v;
            q[j * n + i] = v;
        }

    std::vector<double> alpha(n, 0.0);
    std::vector<double> grad(n, -1.0);  // Q a - e at a = 0
    double violation = std::numeric_limits<double>::infinity();
    bool converged = false;
    int iterations = 0;
    double m_up = 0.0, m_low = 0.0;

    for (int it = 0; it < cfg.max_iter; ++it) {
        // I_up collects indices whose alpha can grow along +yhat, I_low those
        // that can shrink; -yhat_t grad_t estimates the intercept either way.
        std::ptrdiff_t i_up = -1, i_low = -1;
        m_up = -std::numeric_limits<double>::infinity();
        m_low = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            const double score = -yhat[t] * grad[t];
            const bool in_up = (yhat[t] > 0.0 && alpha[t] < c_box) ||
                               (yhat[t] < 0.0 && alpha[t] > 0.0);
            const bool in_low = (yhat[t] < 0.0 && alpha[t] < c_box) ||
                                (yhat[t] > 0.0 && alpha[t] > 0.0);
            if (in_up && score > m_up) {
                m_up = score;
                i_up = static_cast<std::ptrdiff_t>(t);
            }
            if (in_low && score < m_low) {
                m_low = score;
                i_low = static_cast<std::ptrdiff_t>(t);
            }
        }
        violation = m_up - m_low;
        if (i_up < 0 || i_low < 0 || violation <= cfg.tol) {
            converged = true;
            break;
        }
        const auto i = static_cast<std::size_t>(i_up);
        const auto j = static_cast<std::size_t>(i_low);

        // Two-variable subproblem along d_i = yhat_i, d_j = -yhat_j (the
        // feasible direction): optimal magnitude = violation / curvature.
        const double quad = std::max(q[i * n + i] + q[j * n + j] -
                                         2.0 * yhat[i] * yhat[j] * q[i * n + j],
                                     1e-12);
        const double cap_i = yhat[i] > 0.0 ? c_box - alpha[i] : alpha[i];
        const double cap_j = yhat[j] > 0.0 ? alpha[j] : c_box - alpha[j];
        const double t_step = std::min({violation / quad, cap_i, cap_j});

        const double old_i = alpha[i], old_j = alpha[j];
        // Land exactly on the box when the step is capped so the constraint
        // 0 <= alpha <= C holds bit-exactly.
        alpha[i] = t_step == cap_i ? (yhat[i] > 0.0 ? c_box : 0.0) : alpha[i] + yhat[i] * t_step;
        alpha[j] = t_step == cap_j ? (yhat[j] > 0.0 ? 0.0 : c_box) : alpha[j] - yhat[j] * t_step;
        alpha[i] = std::clamp(alpha[i], 0.0, c_box);
        alpha[j] = std::clamp(alpha[j], 0.0, c_box);

        kernels::axpy(alpha[i] - old_i, q.data() + i * n, grad.data(), n);
        kernels::axpy(alpha[j] - old_j, q.data() + j * n, grad.data(), n);
        ++iterations;
    }

    LinearModel model;
    model.kind = ModelKind::svm;
    model.n_classes = 2;
    model.reg_c = cfg.reg_c;
    model.converged = converged;
    model.iterations = iterations;
    model.kkt_violation = std::max(0.0, violation);
    model.dual_coefs = alpha;
    model.weights = Matrix(1, X.cols);
    for (std::size_t i = 0; i < n; ++i)
        if (alpha[i] != 0.0) kernels::axpy(alpha[i] * yhat[i], X.row(i), model.weights.row(0), X.cols);
    // KKT: free support vectors satisfy b = -yhat_t grad_t; the violating-
    // pair extrema bracket that value, so take their midpoint.
    model.intercepts = {std::isfinite(m_up) && std::isfinite(m_low) ? 0.5 * (m_up + m_low) : 0.0};
    return model;
}

Matrix predict_proba(const LinearModel& m, const Matrix& X) {
    if (m.kind != ModelKind::logreg)
        throw std::invalid_argument("predict_proba: logistic models only");
    check_dims(m, X, "predict_proba");
    const int k = m.n_classes;
    Matrix out(X.rows, static_cast<std::size_t>(k));
    if (k == 2) {
        for (std::size_t r = 0; r < X.rows; ++r) {
            const double z = kernels::dot(X.row(r), m.weights.row(0), X.cols) + m.intercepts[0];
            const double p1 = sigmoid(z);
            out(r, 0) = 1.0 - p1;
            out(r, 1) = p1;
        }
        return out;
    }
    std::vector<double> z(static_cast<std::size_t>(k));
    for (std::size_t r = 0; r < X.rows; ++r) {
        for (int c = 0; c < k; ++c)
            z[static_cast<std::size_t>(c)] =
                kernels::dot(X.row(r), m.weights.row(static_cast<std::size_t>(c)), X.cols) +
                m.intercepts[static_cast<std::size_t>(c)];
        softmax_row(z.data(), k, out.row(r));
    }
    return out;
}

std::vector<double> decision_values(const LinearModel& m, const Matrix& X) {
    if (m.weights.rows != 1)
        throw std::invalid_argument("decision_values: binary models only");
    check_dims(m, X, "decision_values");
    std::vector<double> f(X.rows);
    kernels::matvec(X.data.data(), X.rows, X.cols, m.weights.row(0), m.intercepts[0], f.data());
    return f;
}

std::vector<int> predict_classes(const LinearModel& m, const Matrix& X) {
    std::vector<int> pred(X.rows);
    if (m.kind == ModelKind::svm) {
        const auto f = decision_values(m, X);
        for (std::size_t r = 0; r < X.rows; ++r) pred[r] = f[r] > 0.0 ? 1 : 0;
        return pred;
    }
    const Matrix proba = predict_proba(m, X);
    for (std::size_t r = 0; r < X.rows; ++r) {
        const double* row = proba.row(r);
        int best = 0;
        for (int c = 1; c < m.n_classes; ++c)
            if (row[c] > row[best]) best = c;
        pred[r] = best;
    }
    return pred;
}

double accuracy(const LinearModel& m, const Matrix& X, const std::vector<int>& y) {
    if (X.rows != y.size()) throw std::invalid_argument("accuracy: rows != labels");
    if (X.rows == 0) throw std::invalid_argument("accuracy: empty evaluation set");
    const auto pred = predict_classes(m, X);
    std::size_t hits = 0;
    for (std::size_t r = 0; r < X.rows; ++r)
        if (pred[r] == y[r]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(X.rows);
}

double svm_pseudo_proba(double f) {
    // The f >= 0 branch is the plain stable sigmoid; the f < 0 value is its
    // exact complement (1 - p is exact for p in [0.5, 1]), so
    // svm_pseudo_proba(f) + svm_pseudo_proba(-f) == 1 holds bit-for-bit.
    if (f >= 0.0) return 1.0 / (1.0 + std::exp(-f));
    return 1.0 - 1.0 / (1.0 + std::exp(f));
}

double entropy_weight(std::span<const double> p) {
    double e = 0.0;
    for (double v : p) {
        const double q = std::clamp(v, 1e-12, 1.0 - 1e-12);
        e -= q * std::log(q);
    }
    return e;
}

double margin_weight(std::span<const double> p) {
    if (p.size() < 2) throw std::invalid_argument("margin_weight: needs K >= 2");
    double top1 = -std::numeric_limits<double>::infinity();
    double top2 = -std::numeric_limits<double>::infinity();
    for (double v : p) {
        if (v > top1) {
            top2 = top1;
            top1 = v;
        } else if (v > top2) {
            top2 = v;
        }
    }
    return std::exp(-(top1 - top2));
}

double svm_margin_weight(double f) { return std::exp(-std::abs(f)); }

double binary_logreg_objective(const Matrix& X, const std::vector<int>& y,
                               std::span<const double> params, double reg_c) {
    return bin_obj_aug(augment_ones(X), y, params, reg_c);
}

void binary_logreg_gradient(const Matrix& X, const std::vector<int>& y,
                            std::span<const double> params, double reg_c,
                            std::span<double> grad) {
    bin_grad_aug(augment_ones(X), y, params, reg_c, grad);
}

double multinomial_objective(const Matrix& X, const std::vector<int>& y, int n_classes,
                             std::span<const double> params, double reg_c) {
    return multi_obj_aug(augment_ones(X), y, n_classes, params, reg_c);
}

void multinomial_gradient(const Matrix& X, const std::vector<int>& y, int n_classes,
                          std::span<const double> params, double reg_c,
                          std::span<double> grad) {
    multi_grad_aug(augment_ones(X), y, n_classes, params, reg_c, grad);
}

double svm_primal_objective(const Matrix& X, const std::vector<int>& y,
                            std::span<const double> w, double b, double reg_c) {
    double obj = 0.5 * kernels::dot(w.data(), w.data(), w.size());
    for (std::size_t i = 0; i < X.rows; ++i) {
        const double yhat = y[i] == 1 ? 1.0 : -1.0;
        const double f = kernels::dot(X.row(i), w.data(), X.cols) + b;
        obj += reg_c * std::max(0.0, 1.0 - yhat * f);
    }
    return obj;
}

} // namespace mval
