#include "nnaf/evaluation.hpp"

#include <stdexcept>

namespace nnaf {

double mean_squared_error(const Network& net, const Dataset& ds)
{
    if (ds.size() == 0)
        throw std::invalid_argument("mean_squared_error: empty dataset");
    if (net.topology.outputs != ds.class_count)
        throw std::invalid_argument("mean_squared_error: output count differs from class count");
    ForwardWorkspace ws;
    double sum = 0.0;
    for (std::size_t i = 0; i < ds.size(); ++i) {
        const auto y = forward(net, ds.row(i), ws);
        for (std::size_t k = 0; k < y.size(); ++k) {
            const double d = y[k] - (ds.labels[i] == k ? 1.0 : 0.0);
            sum += d * d;
        }
    }
    return sum / static_cast<double>(ds.size() * net.topology.outputs);
}

double accuracy(const Network& net, const Dataset& ds)
{
    if (ds.size() == 0)
        throw std::invalid_argument("accuracy: empty dataset");
    ForwardWorkspace ws;
    std::size_t hits = 0;
    for (std::size_t i = 0; i < ds.size(); ++i)
        hits += argmax(forward(net, ds.row(i), ws)) == ds.labels[i];
    return static_cast<double>(hits) / static_cast<double>(ds.size());
}

FitnessFn mse_fitness(const GenotypeLayout& layout, const Dataset& train)
{
    if (layout.topology.inputs != train.n_features || layout.topology.outputs != train.class_count)
        throw std::invalid_argument("mse_fitness: layout does not fit the dataset");
    return [layout, &train](std::span<const double> genes) {
        return mean_squared_error(decode(layout, genes), train);
    };
}

}  // namespace nnaf
