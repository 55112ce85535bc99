#include "mval/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "mval/rim.hpp"
#include "mval/rng.hpp"
#include "mval/variance.hpp"

namespace mval {
namespace {

std::size_t argmin_lowest(const std::vector<double>& scores) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < scores.size(); ++j)
        if (scores[j] < scores[best]) best = j;
    return best;
}

// Pre-retraining uncertainty weight per pool instance under the current
// model: posterior entropy (binary logreg), top-2 margin (multiclass), or
// decision-value proximity (SVM).
std::vector<double> pool_weights(const LinearModel& model, const Matrix& pool, int n_classes) {
    std::vector<double> e(pool.rows);
    if (model.kind == ModelKind::svm) {
        const auto f = decision_values(model, pool);
        for (std::size_t j = 0; j < pool.rows; ++j) e[j] = svm_margin_weight(f[j]);
        return e;
    }
    const Matrix proba = predict_proba(model, pool);
    for (std::size_t j = 0; j < pool.rows; ++j) {
        const std::span<const double> row(proba.row(j), static_cast<std::size_t>(n_classes));
        e[j] = n_classes == 2 ? entropy_weight(row) : margin_weight(row);
    }
    return e;
}

void dump_scores(const std::string& dir, const std::string& tag, const VarianceScores& s) {
    std::ofstream out(dir + "/" + tag + "_scores.csv");
    out << std::setprecision(17);  // doubles survive the round-trip
    for (std::size_t j = 0; j < s.fused.size(); ++j)
        out << "scores," << j << ',' << s.v1[j] << ',' << s.v2[j] << ',' << s.fused[j] << '\n';
}

void dump_binary_rims(const std::string& dir, const std::string& tag, const BinaryRims& r) {
    std::ofstream out(dir + "/" + tag + "_rims.csv");
    out << std::setprecision(17);
    const std::size_t n = r.pool_size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out << "P," << i << ',' << j << ',' << r.P(i, j) << '\n';
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out << "N," << i << ',' << j << ',' << r.N(i, j) << '\n';
}

void dump_multiclass_rims(const std::string& dir, const std::string& tag,
                          const MulticlassRims& r) {
    std::ofstream out(dir + "/" + tag + "_rims.csv");
    out << std::setprecision(17);
    const std::size_t n = r.pool_size();
    const std::size_t k = r.n_classes();
    for (std::size_t c = 0; c < k; ++c)
        for (std::size_t i = 0; i < n; ++i) {
            const auto plane = r.R[c].plane(i);
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = 0; l < k; ++l)
                    out << 'R' << c + 1 << ',' << i << ',' << j << ',' << l << ','
                        << plane[j * k + l] << '\n';
        }
}

std::string dump_tag(const Dataset& ds, const ActiveState& state) {
    char step[16];
    std::snprintf(step, sizeof step, "%04zu", state.history.size() + 1);
    return ds.name + "_step" + step;
}

std::size_t select_mval(const StrategySpec& spec, const Dataset& ds, const ActiveState& state,
                        const TrainConfig& cfg) {
    const TrainerSpec trainer{spec.classifier, cfg};
    const Matrix pool = gather_rows(ds.features, state.unlabeled);
    const Matrix x_l = gather_rows(ds.features, state.labeled);
    const auto y_l = gather_labels(ds.labels, state.labeled);
    const LinearModel current = spec.classifier == ModelKind::svm
                                    ? train_svm(x_l, y_l, cfg)
                                    : train_logreg(x_l, y_l, cfg);
    const std::vector<double> e = pool_weights(current, pool, ds.n_classes);

    const bool do_dump = !spec.dump_dir.empty();
    if (do_dump) std::filesystem::create_directories(spec.dump_dir);
    const std::string tag = do_dump ? dump_tag(ds, state) : std::string();

    VarianceScores scores;
    if (ds.n_classes == 2) {
        BinaryRims rims = build_binary_rims(ds, state, trainer);
        if (spec.weighting == Weighting::weighted) rims = apply_weights_binary(rims, e);
        if (do_dump) dump_binary_rims(spec.dump_dir, tag, rims);
        scores.v1 = v1_binary(rims);
        scores.v2 = v2_binary(rims);
    } else {
        MulticlassRims rims = build_multiclass_rims(ds, state, trainer);
        if (spec.weighting == Weighting::weighted) rims = apply_weights_multiclass(rims, e);
        if (do_dump) dump_multiclass_rims(spec.dump_dir, tag, rims);
        scores.v1 = v1_multiclass(rims);
        scores.v2 = v2_multiclass(rims);
    }
    scores.fused = fuse(scores.v1, scores.v2).first;
    if (do_dump) dump_scores(spec.dump_dir, tag, scores);

    switch (spec.components) {
        case Components::v1_only: return argmax_lowest(scores.v1);
        case Components::v2_only: return argmax_lowest(scores.v2);
        case Components::fused: break;
    }
    return argmax_lowest(scores.fused);
}

std::size_t select_eer(const StrategySpec& spec, const Dataset& ds, const ActiveState& state,
                       const TrainConfig& cfg) {
    const std::size_t n = state.unlabeled.size();
    const auto k = static_cast<std::size_t>(ds.n_classes);
    const Matrix pool = gather_rows(ds.features, state.unlabeled);
    const Matrix x_l = gather_rows(ds.features, state.labeled);
    const auto y_l = gather_labels(ds.labels, state.labeled);
    const LinearModel current = train_logreg(x_l, y_l, cfg);
    const Matrix p0 = predict_proba(current, pool);

    // Expected post-retraining generalization error of each candidate:
    // sum over its hypothesized labels y of P(y|x_i) times the total 0/1
    // risk 1 - max_l P(l|x_j) across the rest of the pool.
    Matrix aug_x(state.labeled.size() + 1, ds.dims());
    for (std::size_t r = 0; r < state.labeled.size(); ++r) {
        const double* src = ds.features.row(state.labeled[r]);
        std::copy(src, src + ds.dims(), aug_x.row(r));
    }
    auto aug_y = y_l;
    aug_y.push_back(0);

    std::vector<double> risk(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::copy(pool.row(i), pool.row(i) + ds.dims(), aug_x.row(aug_x.rows - 1));
        for (std::size_t y = 0; y < k; ++y) {
            aug_y.back() = static_cast<int>(y);
            const LinearModel retrained = train_logreg(aug_x, aug_y, cfg);
            const Matrix proba = predict_proba(retrained, pool);
            double err = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;  // the candidate's own label is hypothesized, not at risk
                double p_max = 0.0;
                for (std::size_t l = 0; l < k; ++l) p_max = std::max(p_max, proba(j, l));
                err += 1.0 - p_max;
            }
            risk[i] += p0(i, y) * err;
        }
    }

    if (spec.name == StrategyName::ueer) {
        for (std::size_t i = 0; i < n; ++i)
            risk[i] *= entropy_weight(std::span<const double>(p0.row(i), k));
    }
    return argmin_lowest(risk);
}

} // namespace

std::string StrategySpec::label() const {
    switch (name) {
        case StrategyName::random: return "random";
        case StrategyName::uncertainty: return "uncertainty";
        case StrategyName::eer: return "eer";
        case StrategyName::ueer: return "ueer";
        case StrategyName::simple_margin: return "simple_margin";
        case StrategyName::mval: break;
    }
    std::string out = "mval";
    if (components == Components::v1_only) out += ":v1";
    if (components == Components::v2_only) out += ":v2";
    if (weighting == Weighting::unweighted) out += ":unweighted";
    return out;
}

StrategySpec StrategySpec::parse(std::string_view text, ModelKind classifier) {
    StrategySpec spec;
    spec.classifier = classifier;

    std::vector<std::string> parts;
    while (!text.empty()) {
        const auto colon = text.find(':');
        parts.emplace_back(text.substr(0, colon));
        text = colon == std::string_view::npos ? std::string_view() : text.substr(colon + 1);
    }
    if (parts.empty()) throw std::invalid_argument("strategy: empty name");

    const std::string& head = parts[0];
    if (head == "mval") spec.name = StrategyName::mval;
    else if (head == "random" || head == "rs") spec.name = StrategyName::random;
    else if (head == "uncertainty" || head == "us") spec.name = StrategyName::uncertainty;
    else if (head == "eer") spec.name = StrategyName::eer;
    else if (head == "ueer") spec.name = StrategyName::ueer;
    else if (head == "simple_margin" || head == "simple") spec.name = StrategyName::simple_margin;
    else throw std::invalid_argument("strategy: unknown name '" + head + "'");

    if (parts.size() > 1 && spec.name != StrategyName::mval)
        throw std::invalid_argument("strategy: switches only apply to mval, got '" + parts[1] +
                                    "' after '" + head + "'");
    for (std::size_t p = 1; p < parts.size(); ++p) {
        const std::string& sw = parts[p];
        if (sw == "v1") spec.components = Components::v1_only;
        else if (sw == "v2") spec.components = Components::v2_only;
        else if (sw == "fused") spec.components = Components::fused;
        else if (sw == "weighted") spec.weighting = Weighting::weighted;
        else if (sw == "unweighted") spec.weighting = Weighting::unweighted;
        else throw std::invalid_argument("strategy: unknown mval switch '" + sw + "'");
    }
    return spec;
}

void StrategySpec::validate(int n_classes) const {
    if (name == StrategyName::simple_margin && classifier != ModelKind::svm)
        throw std::invalid_argument("strategy: simple_margin requires the svm classifier");
    if ((name == StrategyName::eer || name == StrategyName::ueer) &&
        classifier != ModelKind::logreg)
        throw std::invalid_argument("strategy: eer/ueer require the logreg classifier");
    if (n_classes > 2 && classifier != ModelKind::logreg)
        throw std::invalid_argument("strategy: multiclass runs require the logreg classifier");
}

std::size_t select(const StrategySpec& spec, const Dataset& ds, const ActiveState& state,
                   const TrainConfig& cfg) {
    spec.validate(ds.n_classes);
    const std::size_t n = state.unlabeled.size();
    if (n == 0) throw std::invalid_argument("select: empty pool");
    if (n == 1) return 0;  // forced move, no retraining

    switch (spec.name) {
        case StrategyName::mval:
            return select_mval(spec, ds, state, cfg);
        case StrategyName::random: {
            // Seeded per round from the query count so replay is exact and
            // select stays a pure function of (spec, state).
            Rng rng(mix_seed(spec.rng_seed, state.history.size()));
            return rng.below(n);
        }
        case StrategyName::uncertainty:
        case StrategyName::simple_margin: {
            const Matrix pool = gather_rows(ds.features, state.unlabeled);
            const Matrix x_l = gather_rows(ds.features, state.labeled);
            const auto y_l = gather_labels(ds.labels, state.labeled);
            if (spec.classifier == ModelKind::svm) {
                const LinearModel model = train_svm(x_l, y_l, cfg);
                auto f = decision_values(model, pool);
                for (double& v : f) v = std::abs(v);
                return argmin_lowest(f);
            }
            const LinearModel model = train_logreg(x_l, y_l, cfg);
            const Matrix proba = predict_proba(model, pool);
            std::vector<double> ent(n);
            for (std::size_t j = 0; j < n; ++j)
                ent[j] = entropy_weight(std::span<const double>(
                    proba.row(j), static_cast<std::size_t>(ds.n_classes)));
            return argmax_lowest(ent);
        }
        case StrategyName::eer:
        case StrategyName::ueer:
            return select_eer(spec, ds, state, cfg);
    }
    throw std::logic_error("select: unhandled strategy");
}

bool run_round(const Dataset& ds, ActiveState& state, const StrategySpec& spec,
               const TrainConfig& cfg) {
    if (state.unlabeled.empty()) return false;
    const std::size_t pos = select(spec, ds, state, cfg);
    state.reveal(ds, pos);
    return true;
}

} // namespace mval
