#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "nnaf/genotype.hpp"
#include "nnaf/random.hpp"

namespace nnaf {

enum class Engine { Abc, Pso, De };

std::string_view to_string(Engine engine);
std::optional<Engine> parse_engine(std::string_view label);

/// Mutant construction for differential evolution.
///   RandToBest1: m = a + F (best - a) + F (b - c)
///   Rand1:       m = a + F (b - c)
enum class DeVariant { RandToBest1, Rand1 };

std::string_view to_string(DeVariant variant);
std::optional<DeVariant> parse_de_variant(std::string_view label);

/// Defaults reproduce the reference parameter table: population 10,
/// 1000 iterations, ABC trial limit 100, PSO c1 = c2 = 2 with inertia
/// decaying 1 -> 0, DE CR = 0.9 and F = 0.7.
struct OptimizerConfig {
    std::size_t population = 10;
    std::size_t iterations = 1000;
    std::size_t trial_limit = 100;
    double c1 = 2.0;
    double c2 = 2.0;
    double c0_max = 1.0;
    double c0_min = 0.0;
    double cr = 0.9;
    double f = 0.7;
    DeVariant de_variant = DeVariant::RandToBest1;

    /// Throws std::invalid_argument on out-of-range settings.
    void validate() const;
};

/// Cost to minimise. Must be deterministic and finite for every genotype.
using FitnessFn = std::function<double(std::span<const double>)>;

/// Wraps a FitnessFn and counts calls.
class Evaluator {
public:
    explicit Evaluator(FitnessFn fn) : fn_(std::move(fn)) {}
    double operator()(std::span<const double> genes)
    {
        ++count_;
        return fn_(genes);
    }
    std::size_t count() const { return count_; }

private:
    FitnessFn fn_;
    std::size_t count_ = 0;
};

struct Candidate {
    std::vector<double> genes;
    double fitness = 0.0;
    // ABC: consecutive failed improvement attempts.
    std::size_t abc_trial = 0;
    // PSO state.
    std::vector<double> velocity;
    std::vector<double> best_genes;
    double best_fitness = 0.0;
};

using Population = std::vector<Candidate>;

/// Best position seen by the whole swarm.
struct SwarmBest {
    std::vector<double> genes;
    double fitness = 0.0;
};

struct RunResult {
    std::vector<double> best_genes;
    double best_fitness = 0.0;
    /// Best-so-far cost: entry 0 after initialization, entry t after iteration t.
    std::vector<double> fitness_trace;
    std::uint64_t seed = 0;
    std::size_t evaluations = 0;
};

/// Index of the minimal-cost candidate; ties go to the lowest index.
/// Throws std::invalid_argument on an empty population.
std::size_t fittest(const Population& population);
/// Same, over the candidates' personal-best memory (PSO).
std::size_t fittest_memory(const Population& population);

/// Uniform initialization inside bounds; evaluates each candidate and seeds
/// the PSO memory (zero velocity, personal best = start position).
Population init_population(std::size_t size, const GeneBounds& bounds, Evaluator& evaluate, Rng& rng);

// ---- single-update arithmetic ---------------------------------------------

/// ABC neighbourhood move on one gene: x_ij + phi (x_ij - x_kj), phi in [-1, 1].
double abc_neighbor_gene(double x_ij, double x_kj, double phi);
/// Onlooker selection weight from a cost: 1 / (1 + cost) for cost >= 0,
/// 1 + |cost| otherwise.
double abc_selection_weight(double cost);
/// Linearly decayed inertia; equals c0_max at iteration 0 and c0_min at
/// last_iteration.
double pso_inertia(std::size_t iteration, std::size_t last_iteration, double c0_max, double c0_min);
double pso_velocity(double v, double x, double personal_best, double swarm_best, double c0,
                    double c1, double c2, double r1, double r2);
std::vector<double> de_mutant(DeVariant variant, std::span<const double> a,
                              std::span<const double> b, std::span<const double> c,
                              std::span<const double> best, double f);
/// Binomial crossover: gene i from the mutant when draws[i] < cr or i == forced.
std::vector<double> de_crossover(std::span<const double> target, std::span<const double> mutant,
                                 std::span<const double> draws, std::size_t forced, double cr);

// ---- engine steps ---------------------------------------------------------

/// One ABC cycle: employed, onlooker and scout phases. Trials replace an
/// incumbent only when strictly better. Scouts reinitialize stagnant food
/// sources (trial counter > trial_limit) uniformly in bounds, except the
/// current best source, which is never abandoned.
void abc_step(Population& population, const GeneBounds& bounds, std::size_t trial_limit,
              Evaluator& evaluate, Rng& rng);

/// One synchronous PSO iteration; `swarm_best` is refreshed after every
/// particle has moved.
void pso_step(Population& population, SwarmBest& swarm_best, std::size_t iteration,
              const OptimizerConfig& config, Evaluator& evaluate, Rng& rng);

/// One DE generation (binomial crossover, greedy target-vs-trial selection).
/// Throws std::invalid_argument when the population has fewer than 4 members.
void de_step(Population& population, const OptimizerConfig& config, Evaluator& evaluate, Rng& rng);

/// Elitist optimization loop: initialize, then repeat engine steps for
/// config.iterations, tracking the best candidate ever found.
RunResult optimize(Engine engine, const OptimizerConfig& config, const GeneBounds& bounds,
                   const FitnessFn& fitness, std::uint64_t seed);

}  // namespace nnaf
