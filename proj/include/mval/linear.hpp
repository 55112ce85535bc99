#pragma once

#include <span>
#include <vector>

#include "mval/matrix.hpp"

namespace mval {

enum class ModelKind { logreg, svm };

// Solver settings. reg_c is the loss weight C in
//   minimize 1/2 ||w||^2 + C * sum_i loss_i(w, b)
// (intercept unregularized); tol is the stopping threshold on the gradient
// norm (logreg) or on the maximal KKT violation (SVM dual).
struct TrainConfig {
    double reg_c = 100.0;
    int max_iter = 200;
    double tol = 1e-8;

    static TrainConfig logreg_defaults() { return {100.0, 200, 1e-8}; }
    static TrainConfig svm_defaults() { return {10.0, 50000, 1e-10}; }
};

// A trained linear classifier. Binary models (logreg or SVM) keep one weight
// row and predict class 1 iff w.x + b > 0; multinomial logreg keeps one row
// per class. SVM models additionally carry their dual solution.
struct LinearModel {
    ModelKind kind = ModelKind::logreg;
    Matrix weights;                  // 1 x d (binary) or K x d (multinomial)
    std::vector<double> intercepts;  // one per weight row
    int n_classes = 2;
    double reg_c = 100.0;
    bool converged = false;
    int iterations = 0;
    std::vector<double> dual_coefs;   // SVM only: alpha per training point
    double kkt_violation = 0.0;       // SVM only: final max violating-pair gap

    std::size_t dims() const { return weights.cols; }
};

// --- Trainers --------------------------------------------------------------

// L2-regularized logistic regression, deterministic damped Newton from zero
// initialization. y holds class ids 0..K-1; K=2 trains the binary sigmoid
// model, K>2 one multinomial softmax model. Throws on single-class input or
// a non-finite objective.
LinearModel train_logreg(const Matrix& X, const std::vector<int>& y, const TrainConfig& cfg);

// L2-regularized linear SVM (hinge loss), solved in the dual by SMO-style
// maximal-violating-pair updates. Binary only: y in {0,1}. The equality
// constraint sum_i alpha_i yhat_i = 0 comes from the unregularized intercept.
LinearModel train_svm(const Matrix& X, const std::vector<int>& y, const TrainConfig& cfg);

// --- Prediction ------------------------------------------------------------

// Posterior matrix, one probability row per instance (rows sum to 1).
// Logistic models only; binary columns are [P(class0), P(class1)].
Matrix predict_proba(const LinearModel& m, const Matrix& X);

// w.x + b per row; binary models only (one decision value per instance).
std::vector<double> decision_values(const LinearModel& m, const Matrix& X);

// Argmax-posterior class per row (binary SVM: sign of the decision value);
// ties break to the lowest class id.
std::vector<int> predict_classes(const LinearModel& m, const Matrix& X);

// Fraction of rows whose predicted class matches y.
double accuracy(const LinearModel& m, const Matrix& X, const std::vector<int>& y);

// Sigmoidal transfer turning an SVM decision value into a pseudo-probability
// of class 1: 1 / (1 + exp(-f)). No Platt scaling.
double svm_pseudo_proba(double f);

// --- Uncertainty weights ---------------------------------------------------

// Shannon entropy -sum_y p_y ln p_y with probabilities clamped to
// [1e-12, 1-1e-12] before the log.
double entropy_weight(std::span<const double> p);

// exp(-(p_top1 - p_top2)): 1 when the top two posteriors tie, exp(-1) at the
// maximal margin.
double margin_weight(std::span<const double> p);

// exp(-|f|): highest for instances nearest the SVM decision boundary.
double svm_margin_weight(double f);

// --- Objective/gradient building blocks ------------------------------------
// The exact functions the trainers minimize, exposed so tests can check
// analytic gradients against finite differences and compare against
// independent slow solvers. Parameter layout: binary params = [w_0..w_{d-1}, b];
// multinomial params = K rows of [w_0..w_{d-1}, b] flattened row-major.

double binary_logreg_objective(const Matrix& X, const std::vector<int>& y,
                               std::span<const double> params, double reg_c);
void binary_logreg_gradient(const Matrix& X, const std::vector<int>& y,
                            std::span<const double> params, double reg_c,
                            std::span<double> grad);
double multinomial_objective(const Matrix& X, const std::vector<int>& y, int n_classes,
                             std::span<const double> params, double reg_c);
void multinomial_gradient(const Matrix& X, const std::vector<int>& y, int n_classes,
                          std::span<const double> params, double reg_c,
                          std::span<double> grad);

// 1/2 ||w||^2 + C * sum_i max(0, 1 - yhat_i (w.x_i + b)) with yhat in {-1,+1}
// mapped from classes {0,1}.
double svm_primal_objective(const Matrix& X, const std::vector<int>& y,
                            std::span<const double> w, double b, double reg_c);

} // namespace mval
