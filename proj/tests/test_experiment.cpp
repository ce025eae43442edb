#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nnaf/evaluation.hpp"
#include "nnaf/experiment.hpp"

using namespace nnaf;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = NNAF_DATA_DIR;

ExperimentConfig quick(Algorithm algo, TransferKind tf)
{
    ExperimentConfig cfg;
    cfg.algorithm = algo;
    cfg.tf = tf;
    cfg.optimizer.iterations = 15;
    cfg.bp.epochs = 15;
    cfg.bp_restarts = 2;
    cfg.seed = 11;
    return cfg;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("labels and pairing rules")
{
    for (auto a : {Algorithm::Bp, Algorithm::Abc, Algorithm::Pso, Algorithm::De})
        CHECK(parse_algorithm(to_string(a)) == a);
    CHECK(is_valid_pair(Algorithm::Bp, TransferKind::SigFix));
    CHECK(is_valid_pair(Algorithm::Bp, TransferKind::TanhFix));
    CHECK_FALSE(is_valid_pair(Algorithm::Bp, TransferKind::Gaussian));
    CHECK(is_valid_pair(Algorithm::Pso, TransferKind::Beta));
}

TEST_CASE("defaults follow the reference protocol")
{
    const ExperimentConfig cfg;
    CHECK(cfg.folds == 10);
    CHECK(cfg.hidden == 5);
    CHECK(cfg.bp_restarts == 10);
    CHECK(cfg.optimizer.iterations == 1000);
    CHECK(cfg.bp.epochs == 1000);
}

TEST_CASE("an unsupported pair fails before any work")
{
    const Dataset iris = load_dataset(data_dir, Schema::Iris);
    CHECK_THROWS_AS(run_experiment(quick(Algorithm::Bp, TransferKind::Gaussian), iris), std::invalid_argument);
}

TEST_CASE("summarize")
{
    const auto r = summarize(Schema::Wine, Algorithm::De, TransferKind::Beta, {0.9, 1.0, 0.8});
    CHECK(r.mean == doctest::Approx(0.9));
    CHECK(r.variance == doctest::Approx(0.01));
    CHECK(summarize(Schema::Iris, Algorithm::Abc, TransferKind::SigFix, {0.5}).variance == 0.0);
}

TEST_CASE("run_experiment is deterministic and independent of the job count")
{
    const Dataset iris = load_dataset(data_dir, Schema::Iris);
    for (auto algo : {Algorithm::Bp, Algorithm::Abc, Algorithm::Pso, Algorithm::De}) {
        const auto cfg = quick(algo, TransferKind::SigFix);
        const auto a = run_experiment(cfg, iris, 1);
        const auto b = run_experiment(cfg, iris, 3);
        CHECK(a.row == b.row);
        CHECK(a.row.fold_accuracies.size() == 10);
        CHECK(a.row.mean >= 0.0);
        CHECK(a.row.mean <= 1.0);
        CHECK(a.row.variance >= 0.0);
    }
}

TEST_CASE("fold accuracy agrees with predictions of the returned model")
{
    const Dataset iris = load_dataset(data_dir, Schema::Iris);
    const auto cfg = quick(Algorithm::Abc, TransferKind::TanhAdp);
    const auto out = run_experiment(cfg, iris);
    const FoldPlan plan = stratified_folds(iris, cfg.folds, split_seed(cfg.seed));
    for (std::size_t f = 0; f < cfg.folds; ++f) {
        const auto& model = out.folds[f].model;
        REQUIRE(model.scaler.has_value());
        std::size_t hits = 0;
        const auto test = plan.test_indices(f);
        for (auto i : test) {
            std::vector<double> x(iris.row(i).begin(), iris.row(i).end());
            model.scaler->transform(x);
            hits += predict_class(model.network, x) == iris.labels[i];
        }
        CHECK(out.folds[f].accuracy == static_cast<double>(hits) / static_cast<double>(test.size()));
        CHECK(out.folds[f].trace.size() == cfg.optimizer.iterations + 1);
    }
}

TEST_CASE("a single fold can be re-run on its own")
{
    const Dataset wine = load_dataset(data_dir, Schema::Wine);
    auto cfg = quick(Algorithm::De, TransferKind::Gaussian);
    cfg.dataset = Schema::Wine;
    const auto all = run_experiment(cfg, wine);
    const FoldPlan plan = stratified_folds(wine, cfg.folds, split_seed(cfg.seed));
    const auto f7 = run_fold(cfg, wine, plan, 7);
    CHECK(f7.accuracy == all.folds[7].accuracy);
    CHECK(f7.model.network == all.folds[7].model.network);
}

TEST_CASE("results CSV round-trips and tables have the expected shape")
{
    std::vector<ResultRow> rows{
        summarize(Schema::Iris, Algorithm::Abc, TransferKind::Beta, {0.9, 1.0 / 3.0, 0.7}),
        summarize(Schema::Iris, Algorithm::Pso, TransferKind::Beta, {0.1, 0.2, 0.3}),
        summarize(Schema::Iris, Algorithm::Bp, TransferKind::TanhFix, {1.0, 0.95, 0.9}),
    };
    CHECK(parse_results_csv(results_csv(rows)) == rows);

    const auto md = metaheuristic_table(Schema::Iris, rows);
    CHECK(md.find("| Beta | 0.644 |") != std::string::npos);
    CHECK(md.find("| DE Acc | DE Var |") != std::string::npos);
    CHECK(md.find("SigFix") == std::string::npos);
    const auto bp = backprop_table(rows);
    CHECK(bp.find("| TanhFix | 0.950 | 0.00") != std::string::npos);
    CHECK(bp.find(" | - | - | - | - |\n") != std::string::npos);

    CHECK_THROWS_AS(parse_results_csv("h\niris,abc,beta,2,0.5,0,0.5\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_results_csv("h\niris,abc,relu,1,0.5,0,0.5\n"), std::runtime_error);
}

TEST_CASE("grid: skips bp with adaptive families, writes tables, is byte-reproducible")
{
    GridConfig grid;
    grid.datasets = {Schema::Iris};
    grid.algorithms = {Algorithm::Bp, Algorithm::Abc};
    grid.tfs = {TransferKind::SigFix, TransferKind::Gaussian};
    grid.base = quick(Algorithm::Abc, TransferKind::SigFix);
    grid.data_dir = data_dir;
    grid.jobs = 2;
    std::size_t reported = 0;
    const auto rows = run_grid(grid, [&](const ResultRow&) { ++reported; });
    REQUIRE(rows.size() == 3);
    CHECK(reported == 3);
    CHECK(rows[0].algorithm == Algorithm::Bp);
    CHECK(rows[1].algorithm == Algorithm::Abc);
    CHECK(rows[2].tf == TransferKind::Gaussian);

    const fs::path out = fs::temp_directory_path() / "nnaf_test_grid";
    fs::remove_all(out);
    const auto written = write_results(rows, out / "a");
    CHECK(written.size() == 4);
    CHECK(fs::exists(out / "a" / "iris.md"));
    CHECK(fs::exists(out / "a" / "bp.csv"));
    CHECK(parse_results_csv(slurp(out / "a" / "iris.csv")) == rows);

    grid.jobs = 1;
    write_results(run_grid(grid), out / "b");
    CHECK(slurp(out / "a" / "iris.csv") == slurp(out / "b" / "iris.csv"));
    CHECK(slurp(out / "a" / "iris.md") == slurp(out / "b" / "iris.md"));
    fs::remove_all(out);
}

TEST_CASE("grid: singleton grid gives a one-row table")
{
    GridConfig grid;
    grid.datasets = {Schema::Wine};
    grid.algorithms = {Algorithm::Pso};
    grid.tfs = {TransferKind::TanhAdp};
    grid.base = quick(Algorithm::Pso, TransferKind::TanhAdp);
    grid.data_dir = data_dir;
    const auto rows = run_grid(grid);
    REQUIRE(rows.size() == 1);
    const auto md = metaheuristic_table(Schema::Wine, rows);
    CHECK(std::count(md.begin(), md.end(), '\n') == 5);  // title, blank, header, rule, one row
}

TEST_CASE("grid: a failing cell aborts with its name")
{
    GridConfig grid;
    grid.datasets = {Schema::Wine};
    grid.algorithms = {Algorithm::Abc};
    grid.tfs = {TransferKind::SigFix};
    grid.base = quick(Algorithm::Abc, TransferKind::SigFix);
    grid.base.folds = 60;  // Wine's smallest class has 48 samples
    grid.data_dir = data_dir;
    try {
        run_grid(grid);
        FAIL("expected an error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("wine/abc/sigfix") != std::string::npos);
    }
    grid.data_dir = "/nonexistent";
    CHECK_THROWS(run_grid(grid));
}

TEST_CASE("mse fitness rejects a mismatched layout")
{
    const Dataset iris = load_dataset(data_dir, Schema::Iris);
    CHECK_THROWS_AS(mse_fitness(layout_for({3, 5, 3}, TransferKind::SigFix), iris), std::invalid_argument);
    const auto l = layout_for({4, 5, 3}, TransferKind::SigFix);
    const auto f = mse_fitness(l, iris);
    CHECK(f(std::vector<double>(l.total, 0.0)) == doctest::Approx(0.25 * 3 / 3));
}
