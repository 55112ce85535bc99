#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mval/linear.hpp"
#include "mval/strategy.hpp"

namespace mval {

struct ExperimentConfig {
    std::vector<std::string> dataset_paths;
    std::vector<StrategySpec> strategies;
    ModelKind classifier = ModelKind::logreg;
    TrainConfig train = TrainConfig::logreg_defaults();
    int budget = 100;
    int repetitions = 10;
    std::uint64_t base_seed = 0;
    double train_fraction = 0.5;
    std::string out_dir;
    std::string reference;  // W/T/L baseline; empty = first strategy's label
};

// One (dataset, strategy, repetition) cell. `curve` holds test accuracy
// after the initial seed and after every answered query (budget + 1 points
// unless clamped). A non-empty `error` marks a failed cell; its curve/alc
// are meaningless and excluded from aggregation.
struct ExperimentRecord {
    std::string dataset;
    std::string strategy;
    int repetition = 0;
    std::size_t initial_labeled = 0;
    std::vector<double> curve;
    double alc = 0.0;
    double wall_seconds = 0.0;
    std::vector<std::string> warnings;
    std::string error;
};

// Per-strategy aggregate over all datasets (Table-style footer row).
struct StrategySummary {
    std::string strategy;
    double mean_alc = 0.0;  // mean over datasets of per-dataset mean ALC
    double avg_rank = 0.0;  // ties share the mean rank
    int win_times = 0;      // datasets where best or indistinguishable from best
    int wins = 0, ties = 0, losses = 0;  // paired t-test vs the reference
};

struct DatasetSummary {
    std::string dataset;
    std::map<std::string, double> mean_alc;  // strategy label -> mean ALC
};

struct Summary {
    std::string reference;
    std::vector<StrategySummary> strategies;
    std::vector<DatasetSummary> datasets;
};

// Runs the full protocol: per (dataset, repetition) one split and one
// initial labeled set shared by every strategy (paired design; repetition r
// uses seed base_seed + r), then each strategy plays its own query loop.
// Trainer failures abort only their own cell, recorded in `error`.
std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg);

// Area under the learning curve: the arithmetic mean of the accuracies.
double alc(const std::vector<double>& curve);

// Builds the summary table from records (errored cells are skipped). The
// reference defaults to the first strategy present.
Summary aggregate(const std::vector<ExperimentRecord>& records,
                  const std::string& reference = "");

// Writes records.json, summary.json, and one learning-curve CSV per
// (dataset, strategy) with columns "step,labeled_count,mean_accuracy,
// std_accuracy". Creates out_dir if needed.
void write_results(const std::vector<ExperimentRecord>& records, const Summary& summary,
                   const std::string& out_dir);

// Reads records.json back (inverse of write_results for the records part).
std::vector<ExperimentRecord> read_records(const std::string& records_path);

// Renders the summary as a fixed-width text table.
std::string format_summary(const Summary& summary);

} // namespace mval
