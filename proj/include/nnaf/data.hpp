#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nnaf {

/// UCI column layouts understood by load_csv.
///   iris: 4 features, then the species name (Iris-setosa|Iris-versicolor|Iris-virginica -> 0|1|2)
///   wdbc: ID, diagnosis (B -> 0, M -> 1), then 30 features; the ID is dropped
///   wine: class (1..3 -> 0..2), then 13 features
enum class Schema { Iris, Wdbc, Wine };

std::string_view to_string(Schema schema);
std::optional<Schema> parse_schema(std::string_view label);
/// Conventional file name inside a data directory ("iris.data", ...).
std::string_view file_name(Schema schema);

struct Dataset {
    std::string name;
    std::size_t n_features = 0;
    std::size_t class_count = 0;
    std::vector<double> features;  // row-major [samples x n_features]
    std::vector<std::size_t> labels;

    std::size_t size() const { return labels.size(); }
    std::span<const double> row(std::size_t i) const
    {
        return {features.data() + i * n_features, n_features};
    }
};

/// Parses a UCI-layout CSV. Blank lines are skipped. Throws
/// std::runtime_error with the offending line number on malformed input,
/// and on an empty file.
Dataset load_csv(const std::filesystem::path& path, Schema schema);
Dataset parse_csv(std::string_view text, Schema schema, std::string name = {});

/// Per-feature min-max scaling onto [0, 1]. Constant features map to 0.
class MinMaxScaler {
public:
    MinMaxScaler() = default;
    MinMaxScaler(std::vector<double> mins, std::vector<double> maxs);

    /// Fits on the given rows only (all rows when `rows` is empty).
    static MinMaxScaler fit(const Dataset& ds, std::span<const std::size_t> rows = {});

    void transform(std::span<double> row) const;
    Dataset transform(const Dataset& ds) const;

    const std::vector<double>& mins() const { return mins_; }
    const std::vector<double>& maxs() const { return maxs_; }

private:
    std::vector<double> mins_;
    std::vector<double> maxs_;
};

/// Whole-dataset min-max scaling.
Dataset normalize(const Dataset& ds);

struct FoldPlan {
    std::size_t k = 0;
    std::vector<std::size_t> assignment;  // fold index per sample

    std::vector<std::size_t> test_indices(std::size_t fold) const;
    std::vector<std::size_t> train_indices(std::size_t fold) const;
};

/// Stratified k-fold split: each class is shuffled with the seeded stream
/// and dealt round-robin over the folds, continuing where the previous
/// class stopped. Throws std::invalid_argument when k < 2 or some class has
/// fewer than k samples.
FoldPlan stratified_folds(const Dataset& ds, std::size_t k, std::uint64_t seed);

/// Rows `indices` of ds, in that order.
Dataset subset(const Dataset& ds, std::span<const std::size_t> indices);

}  // namespace nnaf
