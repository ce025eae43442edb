#pragma once

#include <cstddef>
#include <span>

#include "nnaf/data.hpp"
#include "nnaf/genotype.hpp"
#include "nnaf/metaheuristics.hpp"
#include "nnaf/network.hpp"

namespace nnaf {

/// Mean over samples and outputs of (y_k - t_k)^2 against one-hot targets.
double mean_squared_error(const Network& net, const Dataset& ds);

/// Fraction of samples whose argmax output equals the label.
double accuracy(const Network& net, const Dataset& ds);

/// Training objective for the optimizers: decodes a genotype with `layout`
/// and returns its mean squared error on `train`. Holds a reference to
/// `train`, which must outlive the returned function.
FitnessFn mse_fitness(const GenotypeLayout& layout, const Dataset& train);

}  // namespace nnaf
