#include "nnaf/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nnaf/evaluation.hpp"
#include "nnaf/genotype.hpp"

namespace nnaf {

std::string_view to_string(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::Bp: return "bp";
    case Algorithm::Abc: return "abc";
    case Algorithm::Pso: return "pso";
    case Algorithm::De: return "de";
    }
    return "?";
}

std::string_view display_name(Algorithm algorithm)
{
    switch (algorithm) {
    case Algorithm::Bp: return "BP";
    case Algorithm::Abc: return "ABC";
    case Algorithm::Pso: return "PSO";
    case Algorithm::De: return "DE";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view label)
{
    for (auto a : {Algorithm::Bp, Algorithm::Abc, Algorithm::Pso, Algorithm::De})
        if (to_string(a) == label)
            return a;
    return std::nullopt;
}

bool is_valid_pair(Algorithm algorithm, TransferKind tf)
{
    return algorithm != Algorithm::Bp || is_fixed(tf);
}

void ExperimentConfig::validate() const
{
    if (!is_valid_pair(algorithm, tf))
        throw std::invalid_argument("algorithm bp cannot train transfer function " +
                                    std::string(to_string(tf)) + " (only sigfix and tanhfix)");
    if (hidden < 1)
        throw std::invalid_argument("hidden layer needs at least one node");
    if (folds < 2)
        throw std::invalid_argument("folds must be >= 2");
    if (algorithm == Algorithm::Bp) {
        bp.validate();
        if (bp_restarts < 1)
            throw std::invalid_argument("bp restarts must be >= 1");
    } else {
        optimizer.validate();
    }
}

namespace {

constexpr std::uint64_t split_stream = 0x5eed'f01d'0000'0000ULL;

Engine engine_for(Algorithm a)
{
    switch (a) {
    case Algorithm::Abc: return Engine::Abc;
    case Algorithm::Pso: return Engine::Pso;
    case Algorithm::De: return Engine::De;
    case Algorithm::Bp: break;
    }
    throw std::invalid_argument("bp is not a metaheuristic");
}

}  // namespace

std::uint64_t split_seed(std::uint64_t seed)
{
    return derive_seed(seed, split_stream);
}

std::uint64_t fold_seed(std::uint64_t seed, std::size_t fold)
{
    return derive_seed(seed, fold);
}

ResultRow summarize(Schema dataset, Algorithm algorithm, TransferKind tf,
                    std::vector<double> fold_accuracies)
{
    ResultRow row{dataset, algorithm, tf, std::move(fold_accuracies), 0.0, 0.0};
    const auto& acc = row.fold_accuracies;
    if (acc.empty())
        return row;
    double sum = 0.0;
    for (double a : acc)
        sum += a;
    row.mean = sum / static_cast<double>(acc.size());
    if (acc.size() > 1) {
        double ss = 0.0;
        for (double a : acc)
            ss += (a - row.mean) * (a - row.mean);
        row.variance = ss / static_cast<double>(acc.size() - 1);
    }
    return row;
}

FoldOutcome run_fold(const ExperimentConfig& cfg, const Dataset& raw, const FoldPlan& plan,
                     std::size_t fold)
{
    const auto train_idx = plan.train_indices(fold);
    const auto test_idx = plan.test_indices(fold);
    const MinMaxScaler scaler = MinMaxScaler::fit(raw, train_idx);
    const Dataset train = scaler.transform(subset(raw, train_idx));
    const Dataset test = scaler.transform(subset(raw, test_idx));
    const NetworkTopology topology{raw.n_features, cfg.hidden, raw.class_count};
    const std::uint64_t seed = fold_seed(cfg.seed, fold);

    FoldOutcome out;
    out.model.scaler = scaler;
    if (cfg.algorithm == Algorithm::Bp) {
        // Restarts compete on training error; the held-out fold is not consulted.
        std::optional<Network> best;
        for (std::size_t r = 0; r < cfg.bp_restarts; ++r) {
            Rng rng(derive_seed(seed, r));
            Network net = train_bp(init_bp_network(topology, cfg.tf, rng), train, cfg.bp, rng);
            const double cost = mean_squared_error(net, train);
            if (!best || cost < out.train_cost) {
                best = std::move(net);
                out.train_cost = cost;
            }
        }
        out.model.network = std::move(*best);
    } else {
        const auto layout = layout_for(topology, cfg.tf);
        const auto bounds = GeneBounds::uniform(layout.total, init_lo, init_hi);
        const auto result =
            optimize(engine_for(cfg.algorithm), cfg.optimizer, bounds, mse_fitness(layout, train), seed);
        out.model.network = decode(layout, result.best_genes);
        out.train_cost = result.best_fitness;
        out.trace = result.fitness_trace;
    }
    out.accuracy = accuracy(out.model.network, test);
    return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg, const Dataset& raw, std::size_t jobs)
{
    cfg.validate();
    const FoldPlan plan = stratified_folds(raw, cfg.folds, split_seed(cfg.seed));
    ExperimentOutput out;
    out.folds.resize(cfg.folds);
    parallel_for(cfg.folds, jobs, [&](std::size_t f) { out.folds[f] = run_fold(cfg, raw, plan, f); });
    std::vector<double> acc;
    for (const auto& f : out.folds)
        acc.push_back(f.accuracy);
    out.row = summarize(cfg.dataset, cfg.algorithm, cfg.tf, std::move(acc));
    return out;
}

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn)
{
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(n, 1));
    std::vector<std::exception_ptr> errors(n);
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
                break;
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < jobs; ++w)
            workers.emplace_back([&] {
                for (std::size_t i; !failed && (i = next++) < n;) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                        failed = true;
                    }
                }
            });
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

Dataset load_dataset(const std::filesystem::path& data_dir, Schema schema)
{
    return load_csv(data_dir / file_name(schema), schema);
}

std::vector<ResultRow> run_grid(const GridConfig& grid,
                                const std::function<void(const ResultRow&)>& on_row)
{
    struct Cell {
        Schema dataset;
        TransferKind tf;
        Algorithm algorithm;
    };
    std::vector<Cell> cells;
    for (auto ds : grid.datasets)
        for (auto tf : grid.tfs)
            for (auto algo : grid.algorithms)
                if (is_valid_pair(algo, tf))
                    cells.push_back({ds, tf, algo});

    std::map<Schema, Dataset> data;
    for (auto ds : grid.datasets)
        if (!data.count(ds))
            data.emplace(ds, load_dataset(grid.data_dir, ds));

    std::vector<ExperimentConfig> configs;
    for (const auto& c : cells) {
        ExperimentConfig cfg = grid.base;
        cfg.dataset = c.dataset;
        cfg.tf = c.tf;
        cfg.algorithm = c.algorithm;
        cfg.validate();
        configs.push_back(cfg);
    }

    std::vector<ResultRow> rows(cells.size());
    std::mutex report;
    parallel_for(cells.size(), grid.jobs, [&](std::size_t i) {
        const auto& cfg = configs[i];
        try {
            rows[i] = run_experiment(cfg, data.at(cfg.dataset)).row;
        } catch (const std::exception& e) {
            throw std::runtime_error("grid cell " + std::string(to_string(cfg.dataset)) + "/" +
                                     std::string(to_string(cfg.algorithm)) + "/" +
                                     std::string(to_string(cfg.tf)) + ": " + e.what());
        }
        if (on_row) {
            std::lock_guard lock(report);
            on_row(rows[i]);
        }
    });
    return rows;
}

std::string results_csv(const std::vector<ResultRow>& rows)
{
    std::ostringstream out;
    out << "dataset,algorithm,tf,folds,mean,variance,fold_accuracies\n";
    for (const auto& r : rows) {
        out << to_string(r.dataset) << ',' << to_string(r.algorithm) << ',' << to_string(r.tf) << ','
            << r.fold_accuracies.size() << ',' << format_double(r.mean) << ','
            << format_double(r.variance) << ',';
        for (std::size_t i = 0; i < r.fold_accuracies.size(); ++i)
            out << (i ? ";" : "") << format_double(r.fold_accuracies[i]);
        out << '\n';
    }
    return out.str();
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    for (std::size_t start = 0;;) {
        const auto pos = s.find(sep, start);
        out.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos)
            return out;
        start = pos + 1;
    }
}

double to_double(std::string_view s, std::size_t line)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("results csv line " + std::to_string(line) + ": bad number '" +
                                 std::string(s) + "'");
    return v;
}

std::string fixed3(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::vector<ResultRow> parse_results_csv(std::string_view text)
{
    std::vector<ResultRow> rows;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty() || line_no == 1)
            continue;
        const auto f = split(line, ',');
        auto bad = [&](const std::string& what) {
            return std::runtime_error("results csv line " + std::to_string(line_no) + ": " + what);
        };
        if (f.size() != 7)
            throw bad("expected 7 columns");
        const auto ds = parse_schema(f[0]);
        const auto algo = parse_algorithm(f[1]);
        const auto tf = parse_transfer_kind(f[2]);
        if (!ds || !algo || !tf)
            throw bad("unknown dataset, algorithm or transfer function");
        ResultRow r{*ds, *algo, *tf, {}, to_double(f[4], line_no), to_double(f[5], line_no)};
        if (!f[6].empty())
            for (auto a : split(f[6], ';'))
                r.fold_accuracies.push_back(to_double(a, line_no));
        if (r.fold_accuracies.size() != std::stoul(std::string(f[3])))
            throw bad("fold count does not match the accuracies listed");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string metaheuristic_table(Schema dataset, const std::vector<ResultRow>& rows)
{
    const Algorithm algos[] = {Algorithm::Abc, Algorithm::Pso, Algorithm::De};
    std::ostringstream out;
    out << "## " << to_string(dataset) << ": 10-fold CV accuracy\n\n";
    out << "| Function |";
    for (auto a : algos)
        out << ' ' << display_name(a) << " Acc | " << display_name(a) << " Var |";
    out << "\n|---|";
    for (std::size_t i = 0; i < 3; ++i)
        out << "---:|---:|";
    out << '\n';
    for (auto tf : all_transfer_kinds) {
        bool any = false;
        std::ostringstream line;
        line << "| " << display_name(tf) << " |";
        for (auto a : algos) {
            const auto it = std::find_if(rows.begin(), rows.end(), [&](const ResultRow& r) {
                return r.dataset == dataset && r.algorithm == a && r.tf == tf;
            });
            if (it == rows.end()) {
                line << " - | - |";
            } else {
                any = true;
                line << ' ' << fixed3(it->mean) << " | " << fixed3(it->variance) << " |";
            }
        }
        if (any)
            out << line.str() << '\n';
    }
    return out.str();
}

std::string backprop_table(const std::vector<ResultRow>& rows)
{
    const Schema sets[] = {Schema::Iris, Schema::Wdbc, Schema::Wine};
    std::ostringstream out;
    out << "## Backpropagation: 10-fold CV accuracy\n\n| Function |";
    for (auto s : sets)
        out << ' ' << to_string(s) << " Acc | " << to_string(s) << " Var |";
    out << "\n|---|";
    for (std::size_t i = 0; i < 3; ++i)
        out << "---:|---:|";
    out << '\n';
    for (auto tf : {TransferKind::SigFix, TransferKind::TanhFix}) {
        bool any = false;
        std::ostringstream line;
        line << "| " << display_name(tf) << " |";
        for (auto s : sets) {
            const auto it = std::find_if(rows.begin(), rows.end(), [&](const ResultRow& r) {
                return r.dataset == s && r.algorithm == Algorithm::Bp && r.tf == tf;
            });
            if (it == rows.end()) {
                line << " - | - |";
            } else {
                any = true;
                line << ' ' << fixed3(it->mean) << " | " << fixed3(it->variance) << " |";
            }
        }
        if (any)
            out << line.str() << '\n';
    }
    return out.str();
}

std::vector<std::filesystem::path> write_results(const std::vector<ResultRow>& rows,
                                                 const std::filesystem::path& out_dir)
{
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto write = [&](const std::filesystem::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write " + p.string());
        out << text;
        written.push_back(p);
    };

    std::vector<Schema> datasets;
    for (const auto& r : rows)
        if (std::find(datasets.begin(), datasets.end(), r.dataset) == datasets.end())
            datasets.push_back(r.dataset);
    std::vector<ResultRow> bp_rows;
    for (auto ds : datasets) {
        std::vector<ResultRow> mine;
        for (const auto& r : rows)
            if (r.dataset == ds)
                mine.push_back(r);
        const std::string name(to_string(ds));
        write(out_dir / (name + ".csv"), results_csv(mine));
        write(out_dir / (name + ".md"), metaheuristic_table(ds, mine));
    }
    for (const auto& r : rows)
        if (r.algorithm == Algorithm::Bp)
            bp_rows.push_back(r);
    if (!bp_rows.empty()) {
        write(out_dir / "bp.csv", results_csv(bp_rows));
        write(out_dir / "bp.md", backprop_table(bp_rows));
    }
    return written;
}

}  // namespace nnaf
