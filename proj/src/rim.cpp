#include "mval/rim.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "mval/kernels.hpp"

namespace mval {
namespace {

// Shared scaffolding for one round of retrainings: the pool matrix in
// canonical order plus a labeled design matrix with one spare row that each
// candidate is written into in turn (cheaper than rebuilding per candidate).
struct RetrainWorkspace {
    Matrix pool;          // n x d
    Matrix aug_x;         // (|L|+1) x d, last row = current candidate
    std::vector<int> aug_y;

    RetrainWorkspace(const Dataset& ds, const ActiveState& state) {
        pool = gather_rows(ds.features, state.unlabeled);
        aug_x = Matrix(state.labeled.size() + 1, ds.dims());
        for (std::size_t r = 0; r < state.labeled.size(); ++r) {
            const double* src = ds.features.row(state.labeled[r]);
            std::copy(src, src + ds.dims(), aug_x.row(r));
        }
        aug_y = gather_labels(ds.labels, state.labeled);
        aug_y.push_back(0);
    }

    void set_candidate(const double* x, int pseudo_label) {
        std::copy(x, x + aug_x.cols, aug_x.row(aug_x.rows - 1));
        aug_y.back() = pseudo_label;
    }
};

[[noreturn]] void rethrow_for_candidate(std::size_t pool_index, int pseudo_label,
                                        const std::exception& e) {
    throw std::runtime_error("rim: retraining failed for candidate pool index " +
                             std::to_string(pool_index) + " (pseudo-label " +
                             std::to_string(pseudo_label) + "): " + e.what());
}

// Every class must already be labeled: otherwise some retraining set
// L + {(x, pseudo)} covers fewer classes than the dataset declares and the
// trainer would fit a smaller problem than the tensors are shaped for.
void require_all_classes_labeled(const Dataset& ds, const ActiveState& state,
                                 const char* where) {
    std::vector<bool> seen(static_cast<std::size_t>(ds.n_classes), false);
    for (std::size_t idx : state.labeled) seen[static_cast<std::size_t>(ds.labels[idx])] = true;
    for (std::size_t c = 0; c < seen.size(); ++c)
        if (!seen[c])
            throw std::invalid_argument(std::string(where) + ": class " + std::to_string(c) +
                                        " has no labeled instance");
}

} // namespace

BinaryRims build_binary_rims(const Dataset& ds, const ActiveState& state,
                             const TrainerSpec& trainer) {
    if (ds.n_classes != 2) throw std::invalid_argument("build_binary_rims: binary dataset only");
    const std::size_t n = state.unlabeled.size();
    if (n < 2) throw std::invalid_argument("build_binary_rims: pool must hold >= 2 instances");
    require_all_classes_labeled(ds, state, "build_binary_rims");

    RetrainWorkspace ws(ds, state);
    BinaryRims rims;
    rims.P = Matrix(n, n);
    rims.N = Matrix(n, n);

    for (std::size_t i = 0; i < n; ++i) {
        for (int pseudo : {1, 0}) {
            ws.set_candidate(ws.pool.row(i), pseudo);
            double* out_row = (pseudo == 1 ? rims.P : rims.N).row(i);
            try {
                if (trainer.kind == ModelKind::svm) {
                    const LinearModel model = train_svm(ws.aug_x, ws.aug_y, trainer.cfg);
                    const auto f = decision_values(model, ws.pool);
                    for (std::size_t j = 0; j < n; ++j) out_row[j] = svm_pseudo_proba(f[j]);
                } else {
                    const LinearModel model = train_logreg(ws.aug_x, ws.aug_y, trainer.cfg);
                    const Matrix proba = predict_proba(model, ws.pool);
                    for (std::size_t j = 0; j < n; ++j) out_row[j] = proba(j, 1);
                }
            } catch (const std::exception& e) {
                rethrow_for_candidate(i, pseudo, e);
            }
        }
    }
    return rims;
}

BinaryRims apply_weights_binary(const BinaryRims& r, const std::vector<double>& e) {
    if (r.weighted) throw std::logic_error("apply_weights_binary: RIMs already weighted");
    if (e.size() != r.pool_size())
        throw std::invalid_argument("apply_weights_binary: weight count != pool size");

    BinaryRims out = r;
    for (std::size_t i = 0; i < out.P.rows; ++i) {
        kernels::mul_inplace(out.P.row(i), e.data(), e.size());
        kernels::mul_inplace(out.N.row(i), e.data(), e.size());
    }
    out.weights = e;
    out.weighted = true;
    return out;
}

MulticlassRims build_multiclass_rims(const Dataset& ds, const ActiveState& state,
                                     const TrainerSpec& trainer) {
    if (trainer.kind != ModelKind::logreg)
        throw std::invalid_argument("build_multiclass_rims: logistic trainer only");
    const auto k = static_cast<std::size_t>(ds.n_classes);
    const std::size_t n = state.unlabeled.size();
    if (n < 1) throw std::invalid_argument("build_multiclass_rims: empty pool");
    require_all_classes_labeled(ds, state, "build_multiclass_rims");

    RetrainWorkspace ws(ds, state);
    MulticlassRims rims;
    rims.R.reserve(k);
    for (std::size_t c = 0; c < k; ++c) rims.R.emplace_back(n, n, k);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t pseudo = 0; pseudo < k; ++pseudo) {
            ws.set_candidate(ws.pool.row(i), static_cast<int>(pseudo));
            try {
                const LinearModel model = train_logreg(ws.aug_x, ws.aug_y, trainer.cfg);
                const Matrix proba = predict_proba(model, ws.pool);  // n x K, row-major
                const auto plane = rims.R[pseudo].plane(i);          // (j, l), l fastest
                std::copy(proba.data.begin(), proba.data.end(), plane.begin());
            } catch (const std::exception& e) {
                rethrow_for_candidate(i, static_cast<int>(pseudo), e);
            }
        }
    }
    return rims;
}

MulticlassRims apply_weights_multiclass(const MulticlassRims& r, const std::vector<double>& e) {
    if (r.weighted) throw std::logic_error("apply_weights_multiclass: RIMs already weighted");
    if (e.size() != r.pool_size())
        throw std::invalid_argument("apply_weights_multiclass: weight count != pool size");

    MulticlassRims out = r;
    const std::size_t n = out.pool_size();
    const std::size_t k = out.n_classes();
    for (auto& tensor : out.R)
        for (std::size_t i = 0; i < n; ++i) {
            const auto plane = tensor.plane(i);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < k; ++l) plane[j * k + l] *= e[j];
        }
    out.weights = e;
    out.weighted = true;
    return out;
}

} // namespace mval
