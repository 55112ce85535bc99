#include <doctest.h>

#include <mval/bench.hpp>
#include <mval/dataset.hpp>
#include <mval/rng.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace mval;

namespace {

// Writes a deterministic learnable binary problem as a libsvm file with the
// raw +-1 labels that exercise the label-mapping path.
std::string write_pool_file(const std::string& stem, std::size_t rows, std::uint64_t seed) {
    Rng rng(seed);
    const Dataset ds = oracle::random_dataset(rng, rows, 2, 2, 3.0);
    const auto path = std::filesystem::temp_directory_path() / (stem + ".libsvm");
    std::ofstream out(path);
    for (std::size_t r = 0; r < ds.rows(); ++r) {
        out << (ds.labels[r] == 1 ? "+1" : "-1");
        for (std::size_t d = 0; d < ds.dims(); ++d) {
            char buf[40];
            std::snprintf(buf, sizeof buf, " %zu:%.10g", d + 1, ds.features(r, d));
            out << buf;
        }
        out << '\n';
    }
    return path.string();
}

ExperimentRecord make_rec(const std::string& ds, const std::string& strat, int rep,
                          double alc_value, const std::string& error = "") {
    ExperimentRecord rec;
    rec.dataset = ds;
    rec.strategy = strat;
    rec.repetition = rep;
    rec.initial_labeled = 2;
    rec.curve = {alc_value};
    rec.alc = alc_value;
    rec.error = error;
    return rec;
}

ExperimentConfig small_config(const std::string& path) {
    ExperimentConfig cfg;
    cfg.dataset_paths = {path};
    cfg.strategies = {StrategySpec::parse("random", ModelKind::logreg),
                      StrategySpec::parse("uncertainty", ModelKind::logreg)};
    cfg.classifier = ModelKind::logreg;
    cfg.train = TrainConfig::logreg_defaults();
    cfg.budget = 5;
    cfg.repetitions = 3;
    cfg.base_seed = 7;
    return cfg;
}

}  // namespace

TEST_CASE("alc is the mean of the accuracy curve") {
    CHECK(alc({0.5, 0.7, 0.9}) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(alc({1.0}) == 1.0);
    CHECK_THROWS(alc({}));
}

TEST_CASE("an experiment produces one record per cell with full curves") {
    const std::string path = write_pool_file("bench_shape", 40, 1001);
    const ExperimentConfig cfg = small_config(path);
    const auto records = run_experiment(cfg);

    REQUIRE(records.size() == 6);  // 1 dataset x 2 strategies x 3 reps
    for (const auto& rec : records) {
        CHECK(rec.error.empty());
        CHECK(rec.dataset == "bench_shape");
        CHECK(rec.initial_labeled == 2);  // one seed per class
        REQUIRE(rec.curve.size() == 6);   // initial point + budget queries
        CHECK(rec.alc == doctest::Approx(alc(rec.curve)).epsilon(1e-15));
        CHECK(rec.wall_seconds >= 0.0);
        for (double acc : rec.curve) {
            CHECK(acc >= 0.0);
            CHECK(acc <= 1.0);
        }
    }

    // Sorted by (dataset, strategy, repetition).
    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto key = [](const ExperimentRecord& rec) {
            return std::make_pair(rec.strategy, rec.repetition);
        };
        CHECK(key(records[r - 1]) < key(records[r]));
    }

    // Paired design: both strategies start a repetition from the same split
    // and seed set, so the initial accuracy matches within each rep.
    for (int rep = 0; rep < 3; ++rep) {
        double first = -1.0;
        for (const auto& rec : records)
            if (rec.repetition == rep) {
                if (first < 0.0) first = rec.curve.front();
                CHECK(rec.curve.front() == first);
            }
    }

    // Byte-level determinism apart from wall time.
    const auto again = run_experiment(cfg);
    REQUIRE(again.size() == records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        CHECK(again[r].strategy == records[r].strategy);
        CHECK(again[r].repetition == records[r].repetition);
        CHECK(again[r].curve == records[r].curve);
        CHECK(again[r].alc == records[r].alc);
    }
    std::filesystem::remove(path);
}

TEST_CASE("an oversized budget clamps to the pool with a warning") {
    const std::string path = write_pool_file("bench_clamp", 16, 1002);
    ExperimentConfig cfg = small_config(path);
    cfg.strategies = {StrategySpec::parse("random", ModelKind::logreg)};
    cfg.budget = 1000;
    cfg.repetitions = 1;
    const auto records = run_experiment(cfg);

    REQUIRE(records.size() == 1);
    const auto& rec = records.front();
    REQUIRE(rec.error.empty());
    // Train half of 16 rows = 8, minus 2 seeds: 6 pool instances.
    CHECK(rec.curve.size() == 7);
    bool warned = false;
    for (const auto& w : rec.warnings) warned = warned || w.find("clamped") != std::string::npos;
    CHECK(warned);
    std::filesystem::remove(path);
}

TEST_CASE("aggregate ranks strategies and scores them against the reference") {
    std::vector<ExperimentRecord> records;
    for (int rep = 0; rep < 3; ++rep) {
        records.push_back(make_rec("toy", "a", rep, 0.90 + 0.01 * rep));
        records.push_back(make_rec("toy", "b", rep, 0.80));
    }

    const Summary s = aggregate(records);
    CHECK(s.reference == "a");  // defaults to the first strategy seen
    REQUIRE(s.strategies.size() == 2);
    REQUIRE(s.datasets.size() == 1);

    const auto& a = s.strategies[0];
    const auto& b = s.strategies[1];
    CHECK(a.strategy == "a");
    CHECK(a.mean_alc == doctest::Approx(0.91).epsilon(1e-12));
    CHECK(b.mean_alc == doctest::Approx(0.80).epsilon(1e-12));
    CHECK(a.avg_rank == doctest::Approx(1.0));
    CHECK(b.avg_rank == doctest::Approx(2.0));
    CHECK(a.win_times == 1);
    CHECK(b.win_times == 0);
    CHECK(a.wins + a.ties + a.losses == 0);  // the reference plays no game against itself
    CHECK(b.wins == 0);
    CHECK(b.ties == 0);
    CHECK(b.losses == 1);

    // Flipping the reference flips the scoreboard.
    const Summary flipped = aggregate(records, "b");
    CHECK(flipped.strategies[0].wins == 1);
    CHECK(flipped.strategies[0].losses == 0);

    CHECK_THROWS(aggregate(records, "nonexistent"));
}

TEST_CASE("indistinguishable strategies tie and share the rank") {
    std::vector<ExperimentRecord> records;
    for (int rep = 0; rep < 4; ++rep) {
        const double v = 0.85 + 0.01 * (rep % 2);
        records.push_back(make_rec("toy", "a", rep, v));
        records.push_back(make_rec("toy", "b", rep, v));
    }
    const Summary s = aggregate(records);
    REQUIRE(s.strategies.size() == 2);
    CHECK(s.strategies[0].avg_rank == doctest::Approx(1.5));
    CHECK(s.strategies[1].avg_rank == doctest::Approx(1.5));
    CHECK(s.strategies[0].win_times == 1);
    CHECK(s.strategies[1].win_times == 1);
    CHECK(s.strategies[1].ties == 1);
}

TEST_CASE("errored cells drop out of the aggregation") {
    std::vector<ExperimentRecord> records;
    records.push_back(make_rec("toy", "a", 0, 0.90));
    records.push_back(make_rec("toy", "a", 1, 0.91));
    records.push_back(make_rec("toy", "a", 2, 0.0, "trainer exploded"));
    for (int rep = 0; rep < 3; ++rep) records.push_back(make_rec("toy", "b", rep, 0.80));

    const Summary s = aggregate(records, "b");
    const auto& a = s.strategies[0];
    CHECK(a.strategy == "a");
    CHECK(a.mean_alc == doctest::Approx(0.905).epsilon(1e-12));  // errored rep excluded
    CHECK(a.wins == 1);  // paired on the two surviving reps, still significant
}

TEST_CASE("results round-trip through the json files") {
    const std::string path = write_pool_file("bench_roundtrip", 30, 1003);
    ExperimentConfig cfg = small_config(path);
    cfg.repetitions = 2;
    const auto records = run_experiment(cfg);
    const Summary summary = aggregate(records);

    const auto dir = std::filesystem::temp_directory_path() / "mval_bench_out";
    std::filesystem::remove_all(dir);
    write_results(records, summary, dir.string());

    const auto loaded = read_records((dir / "records.json").string());
    REQUIRE(loaded.size() == records.size());
    for (std::size_t r = 0; r < records.size(); ++r) {
        CHECK(loaded[r].dataset == records[r].dataset);
        CHECK(loaded[r].strategy == records[r].strategy);
        CHECK(loaded[r].repetition == records[r].repetition);
        CHECK(loaded[r].initial_labeled == records[r].initial_labeled);
        CHECK(loaded[r].curve == records[r].curve);
        CHECK(loaded[r].alc == records[r].alc);
        CHECK(loaded[r].warnings == records[r].warnings);
        CHECK(loaded[r].error == records[r].error);
    }

    // The summary file parses and carries every strategy row.
    std::ifstream sfile(dir / "summary.json");
    REQUIRE(sfile.good());
    nlohmann::json sj;
    sfile >> sj;
    CHECK(sj.at("reference").get<std::string>() == summary.reference);
    CHECK(sj.at("strategies").size() == summary.strategies.size());

    // Curve CSVs: header plus one line per curve step, labeled counts start
    // at the seed size.
    std::ifstream curve(dir / "curve_bench_roundtrip_random.csv");
    REQUIRE(curve.good());
    std::string line;
    REQUIRE(std::getline(curve, line));
    CHECK(line == "step,labeled_count,mean_accuracy,std_accuracy");
    std::size_t lines = 0;
    std::string first_row;
    while (std::getline(curve, line))
        if (!line.empty()) {
            if (lines == 0) first_row = line;
            ++lines;
        }
    CHECK(lines == records.front().curve.size());
    CHECK(first_row.rfind("0,2,", 0) == 0);

    std::filesystem::remove_all(dir);
    std::filesystem::remove(path);
}

TEST_CASE("a lone strategy ranks first with an empty scoreboard") {
    std::vector<ExperimentRecord> records;
    records.push_back(make_rec("d1", "solo", 0, 0.9));
    records.push_back(make_rec("d1", "solo", 1, 0.8));
    records.push_back(make_rec("d2", "solo", 0, 0.7));
    records.push_back(make_rec("d2", "solo", 1, 0.6));

    const Summary s = aggregate(records);
    REQUIRE(s.strategies.size() == 1);
    CHECK(s.strategies[0].avg_rank == doctest::Approx(1.0));
    CHECK(s.strategies[0].win_times == 2);
    CHECK(s.strategies[0].wins + s.strategies[0].ties + s.strategies[0].losses == 0);
}

TEST_CASE("empty record lists serialize to a valid empty summary") {
    const auto dir = std::filesystem::temp_directory_path() / "mval_bench_empty";
    std::filesystem::remove_all(dir);
    const std::vector<ExperimentRecord> none;
    write_results(none, aggregate(none), dir.string());
    CHECK(read_records((dir / "records.json").string()).empty());

    std::ifstream sfile(dir / "summary.json");
    REQUIRE(sfile.good());
    nlohmann::json sj;
    sfile >> sj;
    CHECK(sj.at("strategies").empty());
    std::filesystem::remove_all(dir);

    CHECK_THROWS(write_results(none, aggregate(none), "/dev/null/not_a_dir"));
}

TEST_CASE("format_summary renders every strategy row") {
    std::vector<ExperimentRecord> records;
    for (int rep = 0; rep < 2; ++rep) {
        records.push_back(make_rec("toy", "mval", rep, 0.9));
        records.push_back(make_rec("toy", "random", rep, 0.8));
    }
    const std::string text = format_summary(aggregate(records));
    CHECK(text.find("reference: mval") != std::string::npos);
    CHECK(text.find("random") != std::string::npos);
    CHECK(text.find("[toy]") != std::string::npos);
}
