#pragma once

#include <vector>

#include "mval/dataset.hpp"
#include "mval/linear.hpp"
#include "mval/matrix.hpp"

namespace mval {

// Which classifier the retraining loop uses and with what solver settings.
struct TrainerSpec {
    ModelKind kind = ModelKind::logreg;
    TrainConfig cfg = TrainConfig::logreg_defaults();

    static TrainerSpec for_kind(ModelKind kind) {
        return {kind, kind == ModelKind::svm ? TrainConfig::svm_defaults()
                                             : TrainConfig::logreg_defaults()};
    }
};

// Binary retraining information matrices over the unlabeled pool (canonical
// ascending-index order for both rows and columns). Entry (i, j) of P is the
// retrained P(class1 | x_j) after adding candidate x_i with pseudo-label
// class 1; N is the same under pseudo-label class 0.
struct BinaryRims {
    Matrix P;
    Matrix N;
    std::vector<double> weights;  // per-column e_j, filled by apply_weights_binary
    bool weighted = false;

    std::size_t pool_size() const { return P.rows; }
};

// Multiclass retraining tensors: R[k](i, j, l) is the retrained P(l | x_j)
// after adding candidate x_i with pseudo-label k.
struct MulticlassRims {
    std::vector<Tensor3> R;  // K tensors, each n x n x K
    std::vector<double> weights;
    bool weighted = false;

    std::size_t pool_size() const { return R.empty() ? 0 : R[0].d0; }
    std::size_t n_classes() const { return R.size(); }
};

// Runs the 2n retrainings (one per candidate and pseudo-label) for a binary
// dataset, each from zero initialization so the result is independent of
// evaluation order. SVM trainers route decision values through
// svm_pseudo_proba. Throws with the offending candidate's pool index if any
// retraining fails.
BinaryRims build_binary_rims(const Dataset& ds, const ActiveState& state,
                             const TrainerSpec& trainer);

// Scales column j of both matrices by e[j]. The input must be unweighted
// (weighting twice is an error) and |e| must equal the pool size.
BinaryRims apply_weights_binary(const BinaryRims& r, const std::vector<double>& e);

// Runs the K*n retrainings for a K-class dataset (logistic trainer only).
MulticlassRims build_multiclass_rims(const Dataset& ds, const ActiveState& state,
                                     const TrainerSpec& trainer);

// Scales slice (., j, .) of every tensor by e[j]; same contract as the
// binary variant.
MulticlassRims apply_weights_multiclass(const MulticlassRims& r, const std::vector<double>& e);

} // namespace mval
