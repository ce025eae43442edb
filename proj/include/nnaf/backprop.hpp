#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nnaf/data.hpp"
#include "nnaf/network.hpp"
#include "nnaf/random.hpp"

namespace nnaf {

/// Online gradient descent with momentum. Defaults: eta 0.5, momentum 0.1,
/// 1000 epochs.
struct BpConfig {
    double learning_rate = 0.5;
    double momentum = 0.1;
    std::size_t epochs = 1000;

    void validate() const;
};

/// Gradient of the per-sample loss E = 1/2 sum_k (y_k - t_k)^2, laid out
/// like the network's weight and bias arrays.
struct Gradient {
    std::vector<double> hidden_weights;
    std::vector<double> hidden_biases;
    std::vector<double> output_weights;
    std::vector<double> output_biases;
};

double sample_loss(const Network& net, std::span<const double> x, std::span<const double> target);

/// Analytic back-propagated gradient of sample_loss. Fixed families only.
Gradient loss_gradient(const Network& net, std::span<const double> x, std::span<const double> target);

/// Fresh fixed-function network with weights and biases uniform in
/// [-1.5, 1.5]. Throws std::invalid_argument for adaptive families.
Network init_bp_network(const NetworkTopology& topology, TransferKind kind, Rng& rng);

/// Trains `net` for cfg.epochs epochs. Each epoch visits the samples in an
/// order reshuffled with `rng`; every visit applies
///   delta <- -eta dE/dw + momentum * delta_prev,   w <- w + delta.
/// Throws std::invalid_argument for adaptive transfer families.
Network train_bp(Network net, const Dataset& train, const BpConfig& cfg, Rng& rng);

}  // namespace nnaf
