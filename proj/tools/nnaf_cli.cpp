// nnaf: train feed-forward networks with adaptive transfer functions and
// reproduce 10-fold cross-validation result tables.
//
//   nnaf train --dataset iris --algo abc --tf beta [--trace] [--save-model PATH]
//   nnaf grid --config grid.cfg
//   nnaf evaluate --model PATH --dataset iris
//   nnaf download [--data-dir data]

#include <CLI11.hpp>
#include <httplib.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <cctype>
#include <cstdio>
#include <string>
#include <vector>

#include "nnaf/evaluation.hpp"
#include "nnaf/experiment.hpp"
#include "nnaf/model_io.hpp"

namespace fs = std::filesystem;
using namespace nnaf;

namespace {

// Enum options are parsed as labels; CLI11 cannot bind these enums directly.
const std::vector<std::string> schema_labels{"iris", "wdbc", "wine"};
const std::vector<std::string> algorithm_labels{"bp", "abc", "pso", "de"};
const std::vector<std::string> tf_labels{"sigfix", "sigadp", "tanhfix", "tanhadp", "gaussian", "beta"};
const std::vector<std::string> de_variant_labels{"randtobest1", "rand1"};

struct Labels {
    std::string dataset, algorithm, tf, de_variant = "randtobest1";
    std::vector<std::string> datasets{"iris", "wdbc", "wine"};
    std::vector<std::string> algorithms{"bp", "abc", "pso", "de"};
    std::vector<std::string> tfs = tf_labels;
};

struct CommonOptions {
    ExperimentConfig cfg;
    std::size_t iterations = 1000;
    fs::path data_dir = "data";
    fs::path out_dir = "results";
    std::size_t jobs = 1;
    Labels labels;
};

void add_common(CLI::App& cmd, CommonOptions& o)
{
    auto& c = o.cfg;
    cmd.add_option("--hidden", c.hidden, "Hidden-layer size")->capture_default_str();
    cmd.add_option("--pop", c.optimizer.population, "Metaheuristic population size")->capture_default_str();
    cmd.add_option("--iters", o.iterations, "Optimizer iterations / BP epochs")->capture_default_str();
    cmd.add_option("--seed", c.seed, "Master seed")->capture_default_str();
    cmd.add_option("--folds", c.folds, "Cross-validation folds")->capture_default_str();
    cmd.add_option("--trial-limit", c.optimizer.trial_limit, "ABC scout threshold")->capture_default_str();
    cmd.add_option("--c1", c.optimizer.c1, "PSO cognitive coefficient")->capture_default_str();
    cmd.add_option("--c2", c.optimizer.c2, "PSO social coefficient")->capture_default_str();
    cmd.add_option("--c0-max", c.optimizer.c0_max, "PSO initial inertia")->capture_default_str();
    cmd.add_option("--c0-min", c.optimizer.c0_min, "PSO final inertia")->capture_default_str();
    cmd.add_option("--cr", c.optimizer.cr, "DE crossover rate")->capture_default_str();
    cmd.add_option("--f", c.optimizer.f, "DE weight factor")->capture_default_str();
    cmd.add_option("--de-variant", o.labels.de_variant, "DE mutant construction")
        ->check(CLI::IsMember(de_variant_labels, CLI::ignore_case))
        ->capture_default_str();
    cmd.add_option("--lr", c.bp.learning_rate, "BP learning rate")->capture_default_str();
    cmd.add_option("--momentum", c.bp.momentum, "BP momentum")->capture_default_str();
    cmd.add_option("--bp-restarts", c.bp_restarts, "BP random restarts per fold")->capture_default_str();
    cmd.add_option("--data-dir", o.data_dir, "Directory holding iris.data, wdbc.data, wine.data")
        ->capture_default_str();
    cmd.add_option("--out", o.out_dir, "Directory for result tables")->capture_default_str();
    cmd.add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();
}

std::string lower(std::string s)
{
    for (auto& ch : s)
        ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return s;
}

// Labels are validated by CLI11 before these run.
Schema to_schema(const std::string& l) { return *parse_schema(lower(l)); }
Algorithm to_algorithm(const std::string& l) { return *parse_algorithm(lower(l)); }
TransferKind to_tf(const std::string& l) { return *parse_transfer_kind(l); }

void finish_common(CommonOptions& o)
{
    o.cfg.optimizer.de_variant = *parse_de_variant(lower(o.labels.de_variant));
    o.cfg.optimizer.iterations = o.iterations;
    o.cfg.bp.epochs = o.iterations;
}

void print_row(const ResultRow& r)
{
    std::printf("%-5s %-4s %-9s mean %.4f  var %.4f\n", std::string(to_string(r.dataset)).c_str(),
                std::string(to_string(r.algorithm)).c_str(), std::string(to_string(r.tf)).c_str(),
                r.mean, r.variance);
    std::fflush(stdout);
}

std::string run_name(const ExperimentConfig& c)
{
    return std::string(to_string(c.dataset)) + "_" + std::string(to_string(c.algorithm)) + "_" +
           std::string(to_string(c.tf)) + "_s" + std::to_string(c.seed);
}

int cmd_train(CommonOptions& o, bool trace, const fs::path& trace_dir, const std::string& save_model)
{
    finish_common(o);
    o.cfg.dataset = to_schema(o.labels.dataset);
    o.cfg.algorithm = to_algorithm(o.labels.algorithm);
    o.cfg.tf = to_tf(o.labels.tf);
    const auto& cfg = o.cfg;
    cfg.validate();
    const Dataset raw = load_dataset(o.data_dir, cfg.dataset);
    const auto out = run_experiment(cfg, raw, o.jobs);

    for (std::size_t f = 0; f < out.folds.size(); ++f)
        std::printf("fold %zu: accuracy %.4f  train mse %.6f\n", f, out.folds[f].accuracy,
                    out.folds[f].train_cost);
    print_row(out.row);
    for (const auto& p : write_results({out.row}, o.out_dir))
        std::cout << "wrote " << p.string() << '\n';

    if (trace) {
        if (cfg.algorithm == Algorithm::Bp) {
            std::cerr << "note: --trace records optimizer fitness; backprop runs have none\n";
        } else {
            fs::create_directories(trace_dir);
            for (std::size_t f = 0; f < out.folds.size(); ++f) {
                const auto path = trace_dir / (run_name(cfg) + "_fold" + std::to_string(f) + ".csv");
                std::ofstream t(path, std::ios::binary);
                t << "iteration,best_cost\n";
                for (std::size_t i = 0; i < out.folds[f].trace.size(); ++i)
                    t << i << ',' << format_double(out.folds[f].trace[i]) << '\n';
                std::cout << "wrote " << path.string() << '\n';
            }
        }
    }
    if (!save_model.empty()) {
        for (std::size_t f = 0; f < out.folds.size(); ++f) {
            const fs::path path = save_model + ".fold" + std::to_string(f);
            nnaf::save_model(path, out.folds[f].model);
            std::cout << "wrote " << path.string() << '\n';
        }
    }
    return 0;
}

int cmd_grid(CommonOptions& o)
{
    finish_common(o);
    GridConfig grid;
    for (const auto& l : o.labels.datasets)
        grid.datasets.push_back(to_schema(l));
    for (const auto& l : o.labels.algorithms)
        grid.algorithms.push_back(to_algorithm(l));
    for (const auto& l : o.labels.tfs)
        grid.tfs.push_back(to_tf(l));
    grid.base = o.cfg;
    grid.data_dir = o.data_dir;
    grid.jobs = o.jobs;
    const auto rows = run_grid(grid, print_row);
    for (const auto& p : write_results(rows, o.out_dir))
        std::cout << "wrote " << p.string() << '\n';
    return 0;
}

int cmd_evaluate(const fs::path& model_path, Schema schema, const fs::path& data_dir)
{
    const Model model = load_model(model_path);
    Dataset ds = load_dataset(data_dir, schema);
    if (model.scaler)
        ds = model.scaler->transform(ds);
    std::printf("accuracy %.4f  mse %.6f  (%zu samples)\n", accuracy(model.network, ds),
                mean_squared_error(model.network, ds), ds.size());
    return 0;
}

int cmd_download(const fs::path& data_dir)
{
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    const std::pair<Schema, const char*> sources[] = {
        {Schema::Iris, "/ml/machine-learning-databases/iris/iris.data"},
        {Schema::Wdbc, "/ml/machine-learning-databases/breast-cancer-wisconsin/wdbc.data"},
        {Schema::Wine, "/ml/machine-learning-databases/wine/wine.data"},
    };
    fs::create_directories(data_dir);
    httplib::Client client("https://archive.ics.uci.edu");
    client.set_follow_location(true);
    client.set_connection_timeout(20);
    for (const auto& [schema, url] : sources) {
        const auto target = data_dir / file_name(schema);
        if (fs::exists(target)) {
            std::cout << target.string() << " already present\n";
            continue;
        }
        const auto res = client.Get(url);
        if (!res || res->status != 200)
            throw std::runtime_error(std::string("download failed: ") + url +
                                     (res ? " (HTTP " + std::to_string(res->status) + ")"
                                          : " (" + httplib::to_string(res.error()) + ")"));
        parse_csv(res->body, schema);  // reject anything that does not parse
        std::ofstream(target, std::ios::binary) << res->body;
        std::cout << "wrote " << target.string() << '\n';
    }
    return 0;
#else
    (void)data_dir;
    std::cerr << "download needs a build with OpenSSL; fetch the UCI files manually\n";
    return 1;
#endif
}

}  // namespace

// Config files hold bare `key = value` lines for the grid subcommand. CLI11 only
// reads config at the top level, so unsectioned keys are routed to `grid` here.
class GridConfigFile : public CLI::ConfigTOML {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override
    {
        auto items = CLI::ConfigTOML::from_config(input);
        for (auto& item : items)
            if (item.parents.empty())
                item.parents = {"grid"};
        return items;
    }
};

int main(int argc, char** argv)
{
    CLI::App app{"Feed-forward networks with adaptive transfer functions, trained by ABC, PSO, DE or backprop"};
    app.require_subcommand(1);

    auto* train = app.add_subcommand("train", "10-fold cross-validation of one configuration");
    CommonOptions train_opts;
    bool trace = false;
    fs::path trace_dir = "traces";
    std::string save_model;
    add_common(*train, train_opts);
    auto& tl = train_opts.labels;
    train->add_option("--dataset", tl.dataset, "iris | wdbc | wine")
        ->required()
        ->check(CLI::IsMember(schema_labels, CLI::ignore_case));
    train->add_option("--algo", tl.algorithm, "bp | abc | pso | de")
        ->required()
        ->check(CLI::IsMember(algorithm_labels, CLI::ignore_case));
    train->add_option("--tf", tl.tf, "sigfix | sigadp | tanhfix | tanhadp | gaussian | beta")
        ->required()
        ->check(CLI::IsMember(tf_labels, CLI::ignore_case));
    train->add_flag("--trace", trace, "Write per-iteration best cost to <trace-dir>/<run>_fold<i>.csv");
    train->add_option("--trace-dir", trace_dir, "Directory for trace CSVs")->capture_default_str();
    train->add_option("--save-model", save_model, "Save each fold's model to PATH.fold<i>");

    auto* grid = app.add_subcommand("grid", "Run a dataset x algorithm x transfer-function grid");
    CommonOptions grid_opts;
    app.set_config("--config", "", "Key = value file mirroring the grid flags (use after `grid`)");
    app.config_formatter(std::make_shared<GridConfigFile>());
    grid->fallthrough();
    app.allow_config_extras(false);
    add_common(*grid, grid_opts);
    auto& gl = grid_opts.labels;
    grid->add_option("--datasets", gl.datasets, "Comma-separated datasets")
        ->delimiter(',')
        ->check(CLI::IsMember(schema_labels, CLI::ignore_case))
        ->capture_default_str();
    grid->add_option("--algos", gl.algorithms, "Comma-separated algorithms")
        ->delimiter(',')
        ->check(CLI::IsMember(algorithm_labels, CLI::ignore_case))
        ->capture_default_str();
    grid->add_option("--tfs", gl.tfs, "Comma-separated transfer functions")
        ->delimiter(',')
        ->check(CLI::IsMember(tf_labels, CLI::ignore_case))
        ->capture_default_str();

    auto* evaluate = app.add_subcommand("evaluate", "Score a saved model on a whole dataset");
    fs::path model_path;
    std::string eval_schema;
    fs::path eval_data_dir = "data";
    evaluate->add_option("--model", model_path, "Model file written by train --save-model")->required();
    evaluate->add_option("--dataset", eval_schema, "iris | wdbc | wine")
        ->required()
        ->check(CLI::IsMember(schema_labels, CLI::ignore_case));
    evaluate->add_option("--data-dir", eval_data_dir)->capture_default_str();

    auto* download = app.add_subcommand("download", "Fetch the three UCI datasets");
    fs::path download_dir = "data";
    download->add_option("--data-dir", download_dir)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*train)
            return cmd_train(train_opts, trace, trace_dir, save_model);
        if (*grid)
            return cmd_grid(grid_opts);
        if (*evaluate)
            return cmd_evaluate(model_path, to_schema(eval_schema), eval_data_dir);
        if (*download)
            return cmd_download(download_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
