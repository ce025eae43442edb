#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nnaf/backprop.hpp"
#include "nnaf/data.hpp"
#include "nnaf/metaheuristics.hpp"
#include "nnaf/model_io.hpp"
#include "nnaf/transfer.hpp"

namespace nnaf {

enum class Algorithm { Bp, Abc, Pso, De };

std::string_view to_string(Algorithm algorithm);
std::string_view display_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view label);

/// Backpropagation is only defined for the fixed logistic and tanh families.
bool is_valid_pair(Algorithm algorithm, TransferKind tf);

struct ExperimentConfig {
    Schema dataset = Schema::Iris;
    Algorithm algorithm = Algorithm::Abc;
    TransferKind tf = TransferKind::SigFix;
    std::size_t hidden = 5;
    std::uint64_t seed = 1;
    std::size_t folds = 10;
    OptimizerConfig optimizer;
    BpConfig bp;
    std::size_t bp_restarts = 10;

    /// Throws std::invalid_argument for an unsupported (algorithm, tf) pair
    /// or out-of-range settings.
    void validate() const;
};

/// Seed of the shared fold split for a master seed.
std::uint64_t split_seed(std::uint64_t seed);
/// Seed of the training run on fold `fold`.
std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold);

struct FoldOutcome {
    double accuracy = 0.0;
    double train_cost = 0.0;
    Model model;
    /// Best-so-far training cost per iteration (metaheuristics only).
    std::vector<double> trace;
};

struct ResultRow {
    Schema dataset = Schema::Iris;
    Algorithm algorithm = Algorithm::Abc;
    TransferKind tf = TransferKind::SigFix;
    std::vector<double> fold_accuracies;
    double mean = 0.0;
    double variance = 0.0;

    friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Mean and unbiased (n - 1) sample variance of the fold accuracies.
ResultRow summarize(Schema dataset, Algorithm algorithm, TransferKind tf,
                    std::vector<double> fold_accuracies);

struct ExperimentOutput {
    ResultRow row;
    std::vector<FoldOutcome> folds;
};

/// k-fold cross-validation of one (dataset, algorithm, tf) cell. Each fold is
/// min-max scaled with statistics of its training part, trained (MSE
/// objective), and scored by held-out accuracy. `jobs` > 1 trains folds
/// concurrently; results do not depend on it.
ExperimentOutput run_experiment(const ExperimentConfig& cfg, const Dataset& raw, std::size_t jobs = 1);

/// Trains a single fold. Exposed so folds can be re-run individually.
FoldOutcome run_fold(const ExperimentConfig& cfg, const Dataset& raw, const FoldPlan& plan,
                     std::size_t fold);

struct GridConfig {
    std::vector<Schema> datasets;
    std::vector<Algorithm> algorithms;
    std::vector<TransferKind> tfs;
    ExperimentConfig base;
    std::filesystem::path data_dir = "data";
    std::size_t jobs = 1;
};

/// Runs every valid (dataset, tf, algorithm) cell in that nesting order;
/// backprop is paired only with the fixed families. The returned rows keep
/// that order regardless of completion order. A failing cell aborts the grid
/// with a std::runtime_error naming it.
std::vector<ResultRow> run_grid(const GridConfig& grid,
                                const std::function<void(const ResultRow&)>& on_row = {});

// ---- result tables --------------------------------------------------------

/// Long-format CSV: dataset,algorithm,tf,folds,mean,variance,fold_accuracies
/// where fold_accuracies is ';'-separated. Values round-trip exactly.
std::string results_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> parse_results_csv(std::string_view text);

/// Markdown table for one dataset: one row per transfer family, an
/// accuracy/variance column pair per metaheuristic.
std::string metaheuristic_table(Schema dataset, const std::vector<ResultRow>& rows);
/// Backprop table: fixed families as rows, an accuracy/variance pair per dataset.
std::string backprop_table(const std::vector<ResultRow>& rows);

/// Writes <out>/<dataset>.md and <out>/<dataset>.csv for every dataset in
/// rows, plus <out>/bp.md and <out>/bp.csv when backprop rows are present.
/// Returns the paths written.
std::vector<std::filesystem::path> write_results(const std::vector<ResultRow>& rows,
                                                 const std::filesystem::path& out_dir);

Dataset load_dataset(const std::filesystem::path& data_dir, Schema schema);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. Rethrows the first
/// exception (lowest index) after all workers finish.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

}  // namespace nnaf
