#include "mval/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mval/rng.hpp"

namespace mval {
namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line_no, const std::string& what) {
    throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

bool parse_double(const std::string& tok, double& out) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end != begin && *end == '\0';
}

std::string file_stem(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

// Remaps raw numeric labels to 0..K-1 by sorted order of the distinct values
// and validates the Dataset invariants shared by both loaders.
Dataset finish_dataset(const std::string& path, Matrix features, std::vector<double> raw_labels) {
    if (raw_labels.empty()) throw std::runtime_error(path + ": empty dataset");

    std::vector<double> distinct = raw_labels;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 2)
        throw std::runtime_error(path + ": needs at least 2 classes, found " +
                                 std::to_string(distinct.size()));

    std::map<double, int> to_class;
    for (std::size_t k = 0; k < distinct.size(); ++k) to_class[distinct[k]] = static_cast<int>(k);

    Dataset ds;
    ds.features = std::move(features);
    ds.labels.reserve(raw_labels.size());
    for (double raw : raw_labels) ds.labels.push_back(to_class.at(raw));
    ds.n_classes = static_cast<int>(distinct.size());
    ds.name = file_stem(path);

    for (double v : ds.features.data)
        if (!std::isfinite(v)) throw std::runtime_error(path + ": non-finite feature value");
    return ds;
}

Dataset load_libsvm(const std::string& path, std::ifstream& in) {
    std::vector<double> raw_labels;
    std::vector<std::vector<std::pair<std::size_t, double>>> rows;  // (0-based col, value)
    std::size_t n_cols = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;  // blank line

        double raw = 0.0;
        if (!parse_double(tok, raw)) fail(path, line_no, "bad label '" + tok + "'");
        raw_labels.push_back(raw);

        std::vector<std::pair<std::size_t, double>> row;
        while (ls >> tok) {
            const std::size_t colon = tok.find(':');
            if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
                fail(path, line_no, "bad feature token '" + tok + "'");
            double idx_val = 0.0, val = 0.0;
            if (!parse_double(tok.substr(0, colon), idx_val) || idx_val < 1.0 ||
                idx_val != std::floor(idx_val))
                fail(path, line_no, "bad feature index in '" + tok + "'");
            if (!parse_double(tok.substr(colon + 1), val))
                fail(path, line_no, "bad feature value in '" + tok + "'");
            const auto col = static_cast<std::size_t>(idx_val) - 1;  // 1-based on disk
            row.emplace_back(col, val);
            n_cols = std::max(n_cols, col + 1);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error(path + ": empty dataset");

    Matrix features(rows.size(), n_cols);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& [col, val] : rows[r]) features(r, col) = val;
    return finish_dataset(path, std::move(features), std::move(raw_labels));
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
        // Trim surrounding whitespace; the dialect is plain comma-separated.
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

Dataset load_csv(const std::string& path, std::ifstream& in) {
    std::string line;
    std::vector<std::vector<std::string>> table;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        table.push_back(split_csv_line(line));
    }
    if (table.empty()) throw std::runtime_error(path + ": empty dataset");

    const std::size_t width = table[0].size();
    if (width < 2) fail(path, 1, "need at least one feature column plus the label");
    for (std::size_t r = 0; r < table.size(); ++r)
        if (table[r].size() != width)
            fail(path, r + 1, "expected " + std::to_string(width) + " columns, got " +
                                  std::to_string(table[r].size()));

    // Header row: present iff some first-row cell is not numeric. With a
    // header the label column must be named "label"; without one the label
    // is the last column.
    double ignored = 0.0;
    const bool has_header = std::any_of(table[0].begin(), table[0].end(), [&](const std::string& c) {
        return !parse_double(c, ignored);
    });
    std::size_t label_col = width - 1;
    std::size_t first_data_row = 0;
    if (has_header) {
        const auto it = std::find(table[0].begin(), table[0].end(), "label");
        if (it == table[0].end()) fail(path, 1, "header row has no \"label\" column");
        label_col = static_cast<std::size_t>(it - table[0].begin());
        first_data_row = 1;
        if (table.size() == 1) throw std::runtime_error(path + ": header but no data rows");
    }

    const std::size_t n_rows = table.size() - first_data_row;
    Matrix features(n_rows, width - 1);
    std::vector<double> raw_labels(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        const auto& cells = table[r + first_data_row];
        std::size_t out_col = 0;
        for (std::size_t c = 0; c < width; ++c) {
            double v = 0.0;
            if (!parse_double(cells[c], v))
                fail(path, r + first_data_row + 1, "bad number '" + cells[c] + "'");
            if (c == label_col)
                raw_labels[r] = v;
            else
                features(r, out_col++) = v;
        }
    }
    return finish_dataset(path, std::move(features), std::move(raw_labels));
}

} // namespace

std::size_t ActiveState::reveal(const Dataset& ds, std::size_t pool_pos) {
    if (pool_pos >= unlabeled.size()) throw std::out_of_range("reveal: pool position out of range");
    const std::size_t idx = unlabeled[pool_pos];
    unlabeled.erase(unlabeled.begin() + static_cast<std::ptrdiff_t>(pool_pos));
    labeled.push_back(idx);
    history.push_back({idx, ds.labels[idx], history.size() + 1});
    return idx;
}

Dataset load_dataset(const std::string& path, DataFormat format) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open");
    return format == DataFormat::csv ? load_csv(path, in) : load_libsvm(path, in);
}

DataFormat guess_format(const std::string& path) {
    return std::filesystem::path(path).extension() == ".csv" ? DataFormat::csv
                                                             : DataFormat::libsvm;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split(const Dataset& ds, const SplitSpec& spec) {
    const std::size_t n = ds.rows();
    if (!(spec.train_fraction > 0.0) || spec.train_fraction > 1.0)
        throw std::invalid_argument("split: train_fraction must be in (0,1]");
    const auto n_train = static_cast<std::size_t>(std::llround(spec.train_fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train >= n)
        throw std::invalid_argument("split: fraction " + std::to_string(spec.train_fraction) +
                                    " of " + std::to_string(n) + " rows leaves an empty side");

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(spec.rng_seed);
    for (std::size_t i = n - 1; i > 0; --i)  // Fisher-Yates
        std::swap(perm[i], perm[rng.below(i + 1)]);

    std::vector<std::size_t> train(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> test(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
    return {std::move(train), std::move(test)};
}

ActiveState seed_initial(const Dataset& ds, const std::vector<std::size_t>& train,
                         std::uint64_t rng_seed) {
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(ds.n_classes));
    for (std::size_t idx : train) by_class[static_cast<std::size_t>(ds.labels[idx])].push_back(idx);

    ActiveState state;
    Rng rng(rng_seed);
    for (int k = 0; k < ds.n_classes; ++k) {
        auto& members = by_class[static_cast<std::size_t>(k)];
        if (members.empty())
            throw std::runtime_error("seed_initial: class " + std::to_string(k) +
                                     " absent from the training subset");
        state.labeled.push_back(members[rng.below(members.size())]);
    }

    std::vector<std::size_t> chosen = state.labeled;
    std::sort(chosen.begin(), chosen.end());
    for (std::size_t idx : train)
        if (!std::binary_search(chosen.begin(), chosen.end(), idx)) state.unlabeled.push_back(idx);
    return state;
}

Matrix gather_rows(const Matrix& m, const std::vector<std::size_t>& rows) {
    Matrix out(rows.size(), m.cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const double* src = m.row(rows[r]);
        std::copy(src, src + m.cols, out.row(r));
    }
    return out;
}

std::vector<int> gather_labels(const std::vector<int>& labels,
                               const std::vector<std::size_t>& rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (std::size_t r : rows) out.push_back(labels[r]);
    return out;
}

} // namespace mval
