#include "nnaf/metaheuristics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nnaf {

std::string_view to_string(Engine engine)
{
    switch (engine) {
    case Engine::Abc: return "abc";
    case Engine::Pso: return "pso";
    case Engine::De: return "de";
    }
    return "?";
}

std::optional<Engine> parse_engine(std::string_view label)
{
    for (auto e : {Engine::Abc, Engine::Pso, Engine::De})
        if (to_string(e) == label)
            return e;
    return std::nullopt;
}

std::string_view to_string(DeVariant variant)
{
    return variant == DeVariant::RandToBest1 ? "randtobest1" : "rand1";
}

std::optional<DeVariant> parse_de_variant(std::string_view label)
{
    if (label == "randtobest1")
        return DeVariant::RandToBest1;
    if (label == "rand1")
        return DeVariant::Rand1;
    return std::nullopt;
}

void OptimizerConfig::validate() const
{
    if (population < 4)
        throw std::invalid_argument("population must be >= 4");
    if (iterations < 1)
        throw std::invalid_argument("iterations must be >= 1");
    if (trial_limit < 1)
        throw std::invalid_argument("trial_limit must be >= 1");
    if (!(cr >= 0.0 && cr <= 1.0))
        throw std::invalid_argument("CR must lie in [0, 1]");
    if (!(f > 0.0))
        throw std::invalid_argument("F must be positive");
    if (!(c1 >= 0.0) || !(c2 >= 0.0))
        throw std::invalid_argument("c1 and c2 must be non-negative");
}

namespace {

template <class Key>
std::size_t argmin(const Population& population, Key key)
{
    if (population.empty())
        throw std::invalid_argument("fittest: empty population");
    std::size_t best = 0;
    for (std::size_t i = 1; i < population.size(); ++i)
        if (key(population[i]) < key(population[best]))
            best = i;
    return best;
}

// Uniform partner index in [0, n) different from `self`.
std::size_t other_index(std::size_t self, std::size_t n, Rng& rng)
{
    const std::size_t k = rng.index(n - 1);
    return k >= self ? k + 1 : k;
}

// Employed/onlooker move on food source i; returns true if it improved.
void abc_try_neighbor(Population& pop, std::size_t i, Evaluator& evaluate, Rng& rng)
{
    const std::size_t k = other_index(i, pop.size(), rng);
    const std::size_t j = rng.index(pop[i].genes.size());
    const double phi = rng.uniform(-1.0, 1.0);

    std::vector<double> trial = pop[i].genes;
    trial[j] = abc_neighbor_gene(pop[i].genes[j], pop[k].genes[j], phi);
    const double cost = evaluate(trial);
    if (cost < pop[i].fitness) {
        pop[i].genes = std::move(trial);
        pop[i].fitness = cost;
        pop[i].abc_trial = 0;
    } else {
        ++pop[i].abc_trial;
    }
}

}  // namespace

std::size_t fittest(const Population& population)
{
    return argmin(population, [](const Candidate& c) { return c.fitness; });
}

std::size_t fittest_memory(const Population& population)
{
    return argmin(population, [](const Candidate& c) { return c.best_fitness; });
}

Population init_population(std::size_t size, const GeneBounds& bounds, Evaluator& evaluate, Rng& rng)
{
    Population pop(size);
    for (auto& c : pop) {
        c.genes.resize(bounds.size());
        for (std::size_t j = 0; j < bounds.size(); ++j)
            c.genes[j] = rng.uniform(bounds.lo(j), bounds.hi(j));
        c.fitness = evaluate(c.genes);
        c.velocity.assign(bounds.size(), 0.0);
        c.best_genes = c.genes;
        c.best_fitness = c.fitness;
    }
    return pop;
}

double abc_neighbor_gene(double x_ij, double x_kj, double phi)
{
    return x_ij + phi * (x_ij - x_kj);
}

double abc_selection_weight(double cost)
{
    return cost >= 0.0 ? 1.0 / (1.0 + cost) : 1.0 + std::fabs(cost);
}

double pso_inertia(std::size_t iteration, std::size_t last_iteration, double c0_max, double c0_min)
{
    if (last_iteration == 0)
        return c0_max;
    return c0_max - (c0_max - c0_min) * static_cast<double>(iteration) /
                        static_cast<double>(last_iteration);
}

double pso_velocity(double v, double x, double personal_best, double swarm_best, double c0,
                    double c1, double c2, double r1, double r2)
{
    return c0 * v + c1 * r1 * (personal_best - x) + c2 * r2 * (swarm_best - x);
}

std::vector<double> de_mutant(DeVariant variant, std::span<const double> a,
                              std::span<const double> b, std::span<const double> c,
                              std::span<const double> best, double f)
{
    std::vector<double> m(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        m[i] = a[i] + f * (b[i] - c[i]);
        if (variant == DeVariant::RandToBest1)
            m[i] += f * (best[i] - a[i]);
    }
    return m;
}

std::vector<double> de_crossover(std::span<const double> target, std::span<const double> mutant,
                                 std::span<const double> draws, std::size_t forced, double cr)
{
    std::vector<double> trial(target.begin(), target.end());
    for (std::size_t i = 0; i < trial.size(); ++i)
        if (draws[i] < cr || i == forced)
            trial[i] = mutant[i];
    return trial;
}

void abc_step(Population& pop, const GeneBounds& bounds, std::size_t trial_limit,
              Evaluator& evaluate, Rng& rng)
{
    if (pop.empty())
        throw std::invalid_argument("abc_step: empty population");
    if (pop.size() < 2)
        throw std::invalid_argument("abc_step: need at least two food sources");
    const std::size_t n = pop.size();

    // Employed bees: one neighbourhood move per food source.
    for (std::size_t i = 0; i < n; ++i)
        abc_try_neighbor(pop, i, evaluate, rng);

    // Onlooker bees: sources picked by roulette on the post-employed costs.
    std::vector<double> cumulative(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        total += abc_selection_weight(pop[i].fitness);
        cumulative[i] = total;
    }
    for (std::size_t bee = 0; bee < n; ++bee) {
        const double r = rng.uniform01() * total;
        std::size_t i = 0;
        while (i + 1 < n && cumulative[i] <= r)
            ++i;
        abc_try_neighbor(pop, i, evaluate, rng);
    }

    // Scouts.
    const std::size_t keep = fittest(pop);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == keep || pop[i].abc_trial <= trial_limit)
            continue;
        for (std::size_t j = 0; j < pop[i].genes.size(); ++j)
            pop[i].genes[j] = bounds.lo(j) + rng.uniform01() * (bounds.hi(j) - bounds.lo(j));
        pop[i].fitness = evaluate(pop[i].genes);
        pop[i].abc_trial = 0;
    }
}

void pso_step(Population& pop, SwarmBest& swarm_best, std::size_t iteration,
              const OptimizerConfig& config, Evaluator& evaluate, Rng& rng)
{
    if (pop.empty())
        throw std::invalid_argument("pso_step: empty population");
    const std::size_t last = config.iterations > 0 ? config.iterations - 1 : 0;
    const double c0 = pso_inertia(iteration, last, config.c0_max, config.c0_min);

    for (auto& p : pop) {
        for (std::size_t j = 0; j < p.genes.size(); ++j) {
            const double r1 = rng.uniform01();
            const double r2 = rng.uniform01();
            p.velocity[j] = pso_velocity(p.velocity[j], p.genes[j], p.best_genes[j],
                                         swarm_best.genes[j], c0, config.c1, config.c2, r1, r2);
            p.genes[j] += p.velocity[j];
        }
        p.fitness = evaluate(p.genes);
        if (p.fitness < p.best_fitness) {
            p.best_fitness = p.fitness;
            p.best_genes = p.genes;
        }
    }
    const std::size_t best = fittest_memory(pop);
    if (pop[best].best_fitness < swarm_best.fitness) {
        swarm_best.fitness = pop[best].best_fitness;
        swarm_best.genes = pop[best].best_genes;
    }
}

void de_step(Population& pop, const OptimizerConfig& config, Evaluator& evaluate, Rng& rng)
{
    const std::size_t n = pop.size();
    if (n < 4)
        throw std::invalid_argument("de_step: population must have at least 4 members");
    const std::vector<double>& best = pop[fittest(pop)].genes;
    const std::size_t dims = pop.front().genes.size();

    Population next = pop;
    std::vector<double> draws(dims);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t a, b, c;
        do { a = rng.index(n); } while (a == i);
        do { b = rng.index(n); } while (b == i || b == a);
        do { c = rng.index(n); } while (c == i || c == a || c == b);
        const std::size_t forced = rng.index(dims);
        for (auto& r : draws)
            r = rng.uniform01();

        const auto mutant = de_mutant(config.de_variant, pop[a].genes, pop[b].genes,
                                      pop[c].genes, best, config.f);
        auto trial = de_crossover(pop[i].genes, mutant, draws, forced, config.cr);
        const double cost = evaluate(trial);
        if (cost <= pop[i].fitness) {
            next[i].genes = std::move(trial);
            next[i].fitness = cost;
        }
    }
    pop = std::move(next);
}

RunResult optimize(Engine engine, const OptimizerConfig& config, const GeneBounds& bounds,
                   const FitnessFn& fitness, std::uint64_t seed)
{
    config.validate();
    if (bounds.size() == 0)
        throw std::invalid_argument("optimize: no genes");

    Rng rng(seed);
    Evaluator evaluate(fitness);
    Population pop = init_population(config.population, bounds, evaluate, rng);

    // PSO candidates remember their best position; the other engines keep
    // the incumbent in `genes`.
    auto population_best = [&]() {
        return engine == Engine::Pso ? fittest_memory(pop) : fittest(pop);
    };
    RunResult result;
    result.seed = seed;
    result.fitness_trace.reserve(config.iterations + 1);
    std::size_t best = population_best();
    result.best_genes = pop[best].genes;
    result.best_fitness = pop[best].fitness;
    result.fitness_trace.push_back(result.best_fitness);

    SwarmBest swarm{pop[best].genes, pop[best].fitness};
    for (std::size_t t = 0; t < config.iterations; ++t) {
        switch (engine) {
        case Engine::Abc: abc_step(pop, bounds, config.trial_limit, evaluate, rng); break;
        case Engine::Pso: pso_step(pop, swarm, t, config, evaluate, rng); break;
        case Engine::De: de_step(pop, config, evaluate, rng); break;
        }
        best = population_best();
        const Candidate& c = pop[best];
        const double cost = engine == Engine::Pso ? c.best_fitness : c.fitness;
        if (cost < result.best_fitness) {
            result.best_fitness = cost;
            result.best_genes = engine == Engine::Pso ? c.best_genes : c.genes;
        }
        result.fitness_trace.push_back(result.best_fitness);
    }
    result.evaluations = evaluate.count();
    return result;
}

}  // namespace nnaf
