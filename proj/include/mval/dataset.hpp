#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mval/matrix.hpp"

namespace mval {

// Immutable classification dataset: dense features plus integer class labels.
// Raw labels from disk are remapped to 0..K-1 by sorted order of the distinct
// raw values, so e.g. {-1,+1} files become {0,1} with +1 -> class 1.
struct Dataset {
    Matrix features;          // rows = instances, cols = dimensions
    std::vector<int> labels;  // each in [0, n_classes)
    int n_classes = 0;
    std::string name;

    std::size_t rows() const { return features.rows; }
    std::size_t dims() const { return features.cols; }
};

enum class DataFormat { libsvm, csv };

// Controls the train/test partition of a dataset.
struct SplitSpec {
    double train_fraction = 0.5;
    std::uint64_t rng_seed = 0;
};

// One answered query: which instance was chosen, what label the simulated
// oracle revealed, and the 1-based query step.
struct QueryEvent {
    std::size_t index = 0;  // dataset row index
    int label = 0;
    std::size_t step = 0;
};

// Partition of the training subset into labeled set L and unlabeled pool U.
// `labeled` keeps insertion order (seed instances, then queries); `unlabeled`
// stays sorted ascending, which is the canonical pool order every downstream
// matrix row/column follows.
struct ActiveState {
    std::vector<std::size_t> labeled;
    std::vector<std::size_t> unlabeled;
    std::vector<QueryEvent> history;

    // Moves unlabeled[pool_pos] into the labeled set and records the oracle
    // answer looked up from `ds`. Returns the revealed dataset index.
    std::size_t reveal(const Dataset& ds, std::size_t pool_pos);
};

// Parses a file in the given format and normalizes labels. Throws
// std::runtime_error on malformed input, empty files, or single-class data.
Dataset load_dataset(const std::string& path, DataFormat format);

// Guesses the format from the file extension: ".csv" -> csv, else libsvm.
DataFormat guess_format(const std::string& path);

// Deterministically partitions row indices into (train, test), both sorted
// ascending and non-empty. Throws if either side would be empty.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>>
split(const Dataset& ds, const SplitSpec& spec);

// Picks one uniformly random training instance of every class as the initial
// labeled set (size K); the remaining training indices form the pool.
// Throws if some class is absent from `train`.
ActiveState seed_initial(const Dataset& ds, const std::vector<std::size_t>& train,
                         std::uint64_t rng_seed);

// Copies the selected rows of `m` (in the given order) into a new matrix.
Matrix gather_rows(const Matrix& m, const std::vector<std::size_t>& rows);

// Copies labels[i] for each listed row index.
std::vector<int> gather_labels(const std::vector<int>& labels,
                               const std::vector<std::size_t>& rows);

} // namespace mval
