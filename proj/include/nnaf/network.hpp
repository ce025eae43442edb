#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nnaf/transfer.hpp"

namespace nnaf {

/// Layer sizes of a three-layer (single hidden layer) feed-forward network.
struct NetworkTopology {
    std::size_t inputs = 1;
    std::size_t hidden = 1;
    std::size_t outputs = 1;

    /// Throws std::invalid_argument if any layer is empty.
    void validate() const;
    friend bool operator==(const NetworkTopology&, const NetworkTopology&) = default;
};

/// Fully-connected 3-layer network. Every active node computes
/// phi_j(sum_i w_ji x_i - b_j); the bias is subtracted.
///
/// Weight matrices are row-major: hidden_weights[j * inputs + i] connects
/// input i to hidden node j, output_weights[k * hidden + j] connects hidden
/// node j to output k.
struct Network {
    NetworkTopology topology;
    std::vector<double> hidden_weights;
    std::vector<double> hidden_biases;
    std::vector<double> output_weights;
    std::vector<double> output_biases;
    std::vector<TransferSpec> hidden_tf;
    std::vector<TransferSpec> output_tf;

    /// All-zero network with default-parameter transfer functions of one family.
    static Network zeros(const NetworkTopology& topology, TransferKind kind);

    /// The family shared by every node. Throws if the network mixes families.
    TransferKind kind() const;
    /// Checks array sizes, homogeneity and finiteness; throws std::invalid_argument.
    void validate() const;

    friend bool operator==(const Network&, const Network&) = default;
};

/// Scratch buffers for allocation-free forward passes.
struct ForwardWorkspace {
    std::vector<double> hidden;
    std::vector<double> output;
};

/// Forward pass. Throws std::invalid_argument on input dimension mismatch.
std::vector<double> forward(const Network& net, std::span<const double> x);

/// Forward pass into ws; returns a view of ws.output. Hidden activations are
/// left in ws.hidden.
std::span<const double> forward(const Network& net, std::span<const double> x,
                                ForwardWorkspace& ws);

/// Argmax over the outputs, ties resolved toward the lowest index.
std::size_t argmax(std::span<const double> outputs);

std::size_t predict_class(const Network& net, std::span<const double> x);

}  // namespace nnaf
