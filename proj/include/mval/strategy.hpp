#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "mval/dataset.hpp"
#include "mval/linear.hpp"

namespace mval {

enum class StrategyName { mval, random, uncertainty, eer, ueer, simple_margin };

// MVAL ablation switches: score on the original or weighted RIMs, and on
// V1 alone, V2 alone, or their product.
enum class Weighting { weighted, unweighted };
enum class Components { v1_only, v2_only, fused };

struct StrategySpec {
    StrategyName name = StrategyName::mval;
    ModelKind classifier = ModelKind::logreg;
    Weighting weighting = Weighting::weighted;
    Components components = Components::fused;
    std::uint64_t rng_seed = 0;    // random strategy only
    std::string dump_dir;          // non-empty: write per-round RIM/score CSVs

    // Canonical display string, e.g. "mval", "mval:v1:unweighted", "random".
    // Round-trips through parse().
    std::string label() const;

    // Parses a CLI strategy token: a name or alias (rs, us, simple) plus
    // optional mval switches separated by ':', e.g. "mval:v2:unweighted".
    static StrategySpec parse(std::string_view text, ModelKind classifier);

    // Enforces the classifier pairing rules (simple_margin needs svm;
    // eer/ueer and multiclass mval need logreg). Throws on violation.
    void validate(int n_classes) const;
};

// Picks the next query and returns its position in state.unlabeled (pool
// order). Ties always break to the lowest pool index; a single-instance pool
// is returned immediately without any retraining.
std::size_t select(const StrategySpec& spec, const Dataset& ds, const ActiveState& state,
                   const TrainConfig& cfg);

// One Alg.-1 loop iteration: select, reveal the true label, move the index
// from unlabeled to labeled, append history. Returns false (state untouched)
// when the pool is exhausted.
bool run_round(const Dataset& ds, ActiveState& state, const StrategySpec& spec,
               const TrainConfig& cfg);

} // namespace mval
