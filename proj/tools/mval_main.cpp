// Command-line front end for the benchmark harness.
//
//   mval run    --datasets a.libsvm b.csv --strategies mval random ...
//   mval report --in results_dir
//
// `run` executes the full protocol and writes records.json, summary.json,
// and per-(dataset, strategy) learning-curve CSVs; `report` re-aggregates an
// existing records.json. Exit status is nonzero if any experiment cell
// failed.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mval/bench.hpp"
#include "mval/kernels.hpp"

namespace {

int cmd_run(const std::vector<std::string>& datasets, const std::vector<std::string>& strategies,
            const std::string& classifier, int budget, int reps, std::uint64_t seed,
            double train_fraction, double reg_c, const std::string& out_dir,
            const std::string& reference, const std::string& dump_dir) {
    mval::ExperimentConfig cfg;
    cfg.dataset_paths = datasets;
    cfg.classifier = classifier == "svm" ? mval::ModelKind::svm : mval::ModelKind::logreg;
    cfg.train = cfg.classifier == mval::ModelKind::svm ? mval::TrainConfig::svm_defaults()
                                                       : mval::TrainConfig::logreg_defaults();
    if (reg_c > 0.0) cfg.train.reg_c = reg_c;
    cfg.budget = budget;
    cfg.repetitions = reps;
    cfg.base_seed = seed;
    cfg.train_fraction = train_fraction;
    cfg.out_dir = out_dir;
    cfg.reference = reference;
    for (const auto& text : strategies) {
        auto spec = mval::StrategySpec::parse(text, cfg.classifier);
        spec.dump_dir = dump_dir;
        cfg.strategies.push_back(std::move(spec));
    }

    const auto records = mval::run_experiment(cfg);
    const auto summary = mval::aggregate(records, cfg.reference);
    mval::write_results(records, summary, cfg.out_dir);
    std::cout << mval::format_summary(summary);

    int failed = 0;
    for (const auto& rec : records)
        if (!rec.error.empty()) {
            ++failed;
            std::cerr << "error: " << rec.dataset << "/" << rec.strategy << " rep "
                      << rec.repetition << ": " << rec.error << "\n";
        }
    std::cout << "wrote " << records.size() << " records to " << cfg.out_dir;
    if (failed > 0) std::cout << " (" << failed << " failed cells)";
    std::cout << "\n";
    return failed > 0 ? 1 : 0;
}

int cmd_report(const std::string& in_dir, const std::string& reference) {
    const auto records = mval::read_records(in_dir + "/records.json");
    const auto summary = mval::aggregate(records, reference);
    mval::write_results(records, summary, in_dir);
    std::cout << mval::format_summary(summary);
    for (const auto& rec : records)
        if (!rec.error.empty()) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"MVAL active-learning benchmark harness"};
    app.require_subcommand(1);

    std::string kernels;
    app.add_option("--kernels", kernels, "Force a compute backend (scalar, avx2)");

    auto* run = app.add_subcommand("run", "Run experiments and write results");
    std::vector<std::string> datasets, strategies;
    std::string classifier = "logreg", out_dir = "results", reference, dump_dir;
    int budget = 100, reps = 10;
    std::uint64_t seed = 0;
    double train_fraction = 0.5, reg_c = -1.0;
    run->add_option("--datasets", datasets, "Dataset files (libsvm or csv by extension)")
        ->required()
        ->check(CLI::ExistingFile);
    run->add_option("--strategies", strategies,
                    "Strategy specs: mval[:v1|:v2|:fused][:weighted|:unweighted], "
                    "random|rs, uncertainty|us, eer, ueer, simple_margin|simple")
        ->required();
    run->add_option("--classifier", classifier, "Classifier kind")
        ->check(CLI::IsMember({"logreg", "svm"}))
        ->capture_default_str();
    run->add_option("--budget", budget, "Queries per repetition")->capture_default_str();
    run->add_option("--reps", reps, "Repetitions per dataset")->capture_default_str();
    run->add_option("--seed", seed, "Base seed; repetition r uses seed + r")
        ->capture_default_str();
    run->add_option("--train-fraction", train_fraction, "Train split fraction")
        ->capture_default_str();
    run->add_option("--reg-c", reg_c,
                    "Override the loss weight C (defaults: 100 logreg, 10 svm)");
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();
    run->add_option("--reference", reference,
                    "Reference strategy label for W/T/L (default: first strategy)");
    run->add_option("--dump-rims", dump_dir,
                    "Directory for per-round RIM/score debug CSVs (mval only)");

    auto* report = app.add_subcommand("report", "Re-aggregate stored records");
    std::string in_dir;
    std::string report_reference;
    report->add_option("--in", in_dir, "Directory holding records.json")->required();
    report->add_option("--reference", report_reference, "Reference strategy label");

    CLI11_PARSE(app, argc, argv);

    if (!kernels.empty() && !mval::kernels::select(kernels)) {
        std::cerr << "error: kernel backend '" << kernels << "' unavailable; have:";
        for (const auto name : mval::kernels::available()) std::cerr << ' ' << name;
        std::cerr << "\n";
        return 2;
    }

    try {
        if (run->parsed())
            return cmd_run(datasets, strategies, classifier, budget, reps, seed, train_fraction,
                           reg_c, out_dir, reference, dump_dir);
        return cmd_report(in_dir, report_reference);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
