#include "mval/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "mval/dataset.hpp"
#include "mval/rng.hpp"
#include "mval/stats.hpp"

namespace mval {
namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr std::uint64_t kRerollStream = 0x5EEDFACEull;

LinearModel train_model(ModelKind kind, const Matrix& x, const std::vector<int>& y,
                        const TrainConfig& cfg) {
    return kind == ModelKind::svm ? train_svm(x, y, cfg) : train_logreg(x, y, cfg);
}

bool has_all_classes(const Dataset& ds, const std::vector<std::size_t>& subset) {
    std::vector<bool> seen(static_cast<std::size_t>(ds.n_classes), false);
    for (std::size_t idx : subset) seen[static_cast<std::size_t>(ds.labels[idx])] = true;
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::string sanitize(const std::string& label) {
    std::string out = label;
    std::replace(out.begin(), out.end(), ':', '-');
    return out;
}

// Sorted unique strategy labels in first-appearance order.
std::vector<std::string> strategy_labels(const std::vector<ExperimentRecord>& records) {
    std::vector<std::string> labels;
    for (const auto& rec : records)
        if (std::find(labels.begin(), labels.end(), rec.strategy) == labels.end())
            labels.push_back(rec.strategy);
    return labels;
}

std::vector<std::string> dataset_names(const std::vector<ExperimentRecord>& records) {
    std::vector<std::string> names;
    for (const auto& rec : records)
        if (std::find(names.begin(), names.end(), rec.dataset) == names.end())
            names.push_back(rec.dataset);
    return names;
}

// Per-repetition ALCs of one (dataset, strategy) cell group, keyed by rep id
// so paired comparisons can align on common repetitions.
std::map<int, double> rep_alcs(const std::vector<ExperimentRecord>& records,
                               const std::string& dataset, const std::string& strategy) {
    std::map<int, double> out;
    for (const auto& rec : records)
        if (rec.error.empty() && rec.dataset == dataset && rec.strategy == strategy)
            out[rec.repetition] = rec.alc;
    return out;
}

// Aligns two rep->ALC maps on their common repetitions.
std::pair<std::vector<double>, std::vector<double>> paired_vectors(
    const std::map<int, double>& a, const std::map<int, double>& b) {
    std::vector<double> va, vb;
    for (const auto& [rep, alc_a] : a) {
        const auto it = b.find(rep);
        if (it != b.end()) {
            va.push_back(alc_a);
            vb.push_back(it->second);
        }
    }
    return {std::move(va), std::move(vb)};
}

double mean_of(const std::map<int, double>& m) {
    double s = 0.0;
    for (const auto& [rep, v] : m) s += v;
    return m.empty() ? 0.0 : s / static_cast<double>(m.size());
}

// Indistinguishable-or-better check used for "Win Times": strategy counts a
// win on a dataset when it is the best or the paired test cannot separate it
// from the best.
bool counts_as_win(const std::map<int, double>& candidate, const std::map<int, double>& best) {
    if (mean_of(candidate) >= mean_of(best)) return true;
    const auto [va, vb] = paired_vectors(candidate, best);
    if (va.size() < 2) return false;
    return paired_t_test(va, vb) == TestOutcome::tie;
}

json record_to_json(const ExperimentRecord& rec) {
    return json{{"dataset", rec.dataset},
                {"strategy", rec.strategy},
                {"repetition", rec.repetition},
                {"initial_labeled", rec.initial_labeled},
                {"curve", rec.curve},
                {"alc", rec.alc},
                {"wall_seconds", rec.wall_seconds},
                {"warnings", rec.warnings},
                {"error", rec.error}};
}

ExperimentRecord record_from_json(const json& j) {
    ExperimentRecord rec;
    rec.dataset = j.at("dataset").get<std::string>();
    rec.strategy = j.at("strategy").get<std::string>();
    rec.repetition = j.at("repetition").get<int>();
    rec.initial_labeled = j.at("initial_labeled").get<std::size_t>();
    rec.curve = j.at("curve").get<std::vector<double>>();
    rec.alc = j.at("alc").get<double>();
    rec.wall_seconds = j.at("wall_seconds").get<double>();
    rec.warnings = j.at("warnings").get<std::vector<std::string>>();
    rec.error = j.at("error").get<std::string>();
    return rec;
}

} // namespace

double alc(const std::vector<double>& curve) {
    if (curve.empty()) throw std::invalid_argument("alc: empty curve");
    double s = 0.0;
    for (double v : curve) s += v;
    return s / static_cast<double>(curve.size());
}

std::vector<ExperimentRecord> run_experiment(const ExperimentConfig& cfg) {
    if (cfg.dataset_paths.empty()) throw std::invalid_argument("run_experiment: no datasets");
    if (cfg.strategies.empty()) throw std::invalid_argument("run_experiment: no strategies");
    if (cfg.budget < 1 || cfg.repetitions < 1)
        throw std::invalid_argument("run_experiment: budget and repetitions must be >= 1");

    std::vector<ExperimentRecord> records;
    for (const auto& path : cfg.dataset_paths) {
        const Dataset ds = load_dataset(path, guess_format(path));
        for (const auto& spec : cfg.strategies) spec.validate(ds.n_classes);

        for (int rep = 0; rep < cfg.repetitions; ++rep) {
            const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(rep);
            std::vector<std::string> shared_warnings;

            auto [train, test] = split(ds, {cfg.train_fraction, seed});
            if (!has_all_classes(ds, train) || !has_all_classes(ds, test)) {
                // One reroll with a derived seed; a second miss fails the cells.
                shared_warnings.push_back("split seed " + std::to_string(seed) +
                                          " missed a class; rerolled once");
                std::tie(train, test) = split(ds, {cfg.train_fraction, mix_seed(seed, kRerollStream)});
            }

            std::string setup_error;
            ActiveState initial;
            if (!has_all_classes(ds, train) || !has_all_classes(ds, test)) {
                setup_error = "split missed a class even after one reroll";
            } else {
                initial = seed_initial(ds, train, seed);
            }

            int budget = cfg.budget;
            const int pool0 = static_cast<int>(initial.unlabeled.size());
            if (setup_error.empty() && budget > pool0) {
                shared_warnings.push_back("budget " + std::to_string(budget) +
                                          " exceeds pool size " + std::to_string(pool0) +
                                          "; clamped");
                budget = pool0;
            }

            const Matrix x_test = gather_rows(ds.features, test);
            const auto y_test = gather_labels(ds.labels, test);

            for (const auto& strategy : cfg.strategies) {
                ExperimentRecord rec;
                rec.dataset = ds.name;
                rec.strategy = strategy.label();
                rec.repetition = rep;
                rec.initial_labeled = initial.labeled.size();
                rec.warnings = shared_warnings;
                if (!setup_error.empty()) {
                    rec.error = setup_error;
                    records.push_back(std::move(rec));
                    continue;
                }

                StrategySpec spec = strategy;
                spec.rng_seed = seed;  // the random strategy's per-repetition stream
                const auto t0 = std::chrono::steady_clock::now();
                try {
                    ActiveState state = initial;
                    rec.curve.reserve(static_cast<std::size_t>(budget) + 1);
                    auto measure = [&] {
                        const LinearModel model =
                            train_model(cfg.classifier, gather_rows(ds.features, state.labeled),
                                        gather_labels(ds.labels, state.labeled), cfg.train);
                        rec.curve.push_back(accuracy(model, x_test, y_test));
                    };
                    measure();
                    for (int q = 0; q < budget; ++q) {
                        if (!run_round(ds, state, spec, cfg.train)) break;
                        measure();
                    }
                    rec.alc = alc(rec.curve);
                } catch (const std::exception& e) {
                    rec.error = e.what();
                    rec.curve.clear();
                    rec.alc = 0.0;
                }
                rec.wall_seconds =
                    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                records.push_back(std::move(rec));
            }
        }
    }

    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.dataset, a.strategy, a.repetition) <
               std::tie(b.dataset, b.strategy, b.repetition);
    });
    return records;
}

Summary aggregate(const std::vector<ExperimentRecord>& records, const std::string& reference) {
    Summary summary;
    const auto labels = strategy_labels(records);
    const auto datasets = dataset_names(records);
    if (labels.empty()) return summary;

    summary.reference = reference.empty() ? labels.front() : reference;
    if (std::find(labels.begin(), labels.end(), summary.reference) == labels.end())
        throw std::invalid_argument("aggregate: unknown reference strategy '" + summary.reference +
                                    "'");

    // Per-dataset mean ALC per strategy, plus the rep-level values needed by
    // the paired tests.
    std::map<std::string, std::map<std::string, std::map<int, double>>> cells;  // ds -> strat -> rep
    for (const auto& name : datasets) {
        DatasetSummary ds_summary;
        ds_summary.dataset = name;
        for (const auto& label : labels) {
            auto reps = rep_alcs(records, name, label);
            if (!reps.empty()) ds_summary.mean_alc[label] = mean_of(reps);
            cells[name][label] = std::move(reps);
        }
        summary.datasets.push_back(std::move(ds_summary));
    }

    for (const auto& label : labels) {
        StrategySummary row;
        row.strategy = label;
        double alc_sum = 0.0, rank_sum = 0.0;
        int datasets_counted = 0;

        for (const auto& ds_summary : summary.datasets) {
            const auto it = ds_summary.mean_alc.find(label);
            if (it == ds_summary.mean_alc.end()) continue;
            const double own = it->second;
            alc_sum += own;
            ++datasets_counted;

            // Competition ranking with shared mean ranks for exact ties.
            int better = 0, equal = 0;
            for (const auto& [other, value] : ds_summary.mean_alc) {
                if (value > own) ++better;
                if (value == own) ++equal;  // includes self
            }
            rank_sum += better + 0.5 * (equal - 1) + 1.0;

            // Win Times: best mean ALC, or not separable from the best.
            const auto best_it = std::max_element(
                ds_summary.mean_alc.begin(), ds_summary.mean_alc.end(),
                [](const auto& a, const auto& b) { return a.second < b.second; });
            if (counts_as_win(cells[ds_summary.dataset][label],
                              cells[ds_summary.dataset][best_it->first]))
                ++row.win_times;

            if (label != summary.reference) {
                const auto [va, vb] = paired_vectors(cells[ds_summary.dataset][label],
                                                     cells[ds_summary.dataset][summary.reference]);
                if (va.size() >= 2) {
                    switch (paired_t_test(va, vb)) {
                        case TestOutcome::a_wins: ++row.wins; break;
                        case TestOutcome::tie: ++row.ties; break;
                        case TestOutcome::b_wins: ++row.losses; break;
                    }
                }
            }
        }
        if (datasets_counted > 0) {
            row.mean_alc = alc_sum / datasets_counted;
            row.avg_rank = rank_sum / datasets_counted;
        }
        summary.strategies.push_back(std::move(row));
    }
    return summary;
}

void write_results(const std::vector<ExperimentRecord>& records, const Summary& summary,
                   const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);

    {
        json j{{"schema_version", kSchemaVersion}, {"records", json::array()}};
        for (const auto& rec : records) j["records"].push_back(record_to_json(rec));
        std::ofstream out(out_dir + "/records.json");
        if (!out) throw std::runtime_error("write_results: cannot write to " + out_dir);
        out << j.dump(2) << '\n';
    }
    {
        json j{{"schema_version", kSchemaVersion},
               {"reference", summary.reference},
               {"strategies", json::array()},
               {"datasets", json::array()}};
        for (const auto& row : summary.strategies)
            j["strategies"].push_back(json{{"strategy", row.strategy},
                                           {"mean_alc", row.mean_alc},
                                           {"avg_rank", row.avg_rank},
                                           {"win_times", row.win_times},
                                           {"wins", row.wins},
                                           {"ties", row.ties},
                                           {"losses", row.losses}});
        for (const auto& ds : summary.datasets)
            j["datasets"].push_back(json{{"dataset", ds.dataset}, {"mean_alc", ds.mean_alc}});
        std::ofstream out(out_dir + "/summary.json");
        out << j.dump(2) << '\n';
    }

    // Learning-curve CSVs: mean and sample std over repetitions per step.
    for (const auto& ds : dataset_names(records)) {
        for (const auto& label : strategy_labels(records)) {
            std::vector<const ExperimentRecord*> group;
            for (const auto& rec : records)
                if (rec.error.empty() && rec.dataset == ds && rec.strategy == label)
                    group.push_back(&rec);
            if (group.empty()) continue;

            const std::size_t steps = group.front()->curve.size();
            std::ofstream out(out_dir + "/curve_" + ds + "_" + sanitize(label) + ".csv");
            out << "step,labeled_count,mean_accuracy,std_accuracy\n";
            for (std::size_t s = 0; s < steps; ++s) {
                double mean = 0.0;
                std::size_t count = 0;
                for (const auto* rec : group)
                    if (s < rec->curve.size()) {
                        mean += rec->curve[s];
                        ++count;
                    }
                mean /= static_cast<double>(count);
                double ss = 0.0;
                for (const auto* rec : group)
                    if (s < rec->curve.size()) ss += (rec->curve[s] - mean) * (rec->curve[s] - mean);
                const double sd = count > 1 ? std::sqrt(ss / static_cast<double>(count - 1)) : 0.0;
                out << s << ',' << group.front()->initial_labeled + s << ',' << mean << ',' << sd
                    << '\n';
            }
        }
    }
}

std::vector<ExperimentRecord> read_records(const std::string& records_path) {
    std::ifstream in(records_path);
    if (!in) throw std::runtime_error("read_records: cannot open " + records_path);
    json j;
    in >> j;
    if (!j.contains("schema_version") || j["schema_version"].get<int>() != kSchemaVersion)
        throw std::runtime_error("read_records: unsupported schema in " + records_path);
    std::vector<ExperimentRecord> records;
    for (const auto& item : j.at("records")) records.push_back(record_from_json(item));
    return records;
}

std::string format_summary(const Summary& summary) {
    std::ostringstream out;
    out << "reference: " << summary.reference << "\n";
    out << "strategy                 mean_alc  avg_rank  win_times  W/T/L\n";
    for (const auto& row : summary.strategies) {
        char line[160];
        std::snprintf(line, sizeof line, "%-24s %8.4f  %8.2f  %9d  %d/%d/%d\n",
                      row.strategy.c_str(), row.mean_alc, row.avg_rank, row.win_times, row.wins,
                      row.ties, row.losses);
        out << line;
    }
    for (const auto& ds : summary.datasets) {
        out << "\n[" << ds.dataset << "]\n";
        for (const auto& [label, value] : ds.mean_alc) {
            char line[160];
            std::snprintf(line, sizeof line, "  %-22s %8.4f\n", label.c_str(), value);
            out << line;
        }
    }
    return out.str();
}

} // namespace mval
