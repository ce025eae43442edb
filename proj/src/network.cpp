#include "nnaf/network.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nnaf {

void NetworkTopology::validate() const
{
    if (inputs == 0 || hidden == 0 || outputs == 0)
        throw std::invalid_argument("NetworkTopology: every layer needs at least one node");
}

Network Network::zeros(const NetworkTopology& topology, TransferKind kind)
{
    topology.validate();
    Network net;
    net.topology = topology;
    net.hidden_weights.assign(topology.hidden * topology.inputs, 0.0);
    net.hidden_biases.assign(topology.hidden, 0.0);
    net.output_weights.assign(topology.outputs * topology.hidden, 0.0);
    net.output_biases.assign(topology.outputs, 0.0);
    net.hidden_tf.assign(topology.hidden, TransferSpec(kind));
    net.output_tf.assign(topology.outputs, TransferSpec(kind));
    return net;
}

TransferKind Network::kind() const
{
    if (hidden_tf.empty())
        throw std::invalid_argument("Network: no transfer functions");
    const TransferKind k = hidden_tf.front().kind();
    for (const auto& tf : hidden_tf)
        if (tf.kind() != k)
            throw std::invalid_argument("Network: mixed transfer-function families");
    for (const auto& tf : output_tf)
        if (tf.kind() != k)
            throw std::invalid_argument("Network: mixed transfer-function families");
    return k;
}

void Network::validate() const
{
    topology.validate();
    const auto& t = topology;
    if (hidden_weights.size() != t.hidden * t.inputs || hidden_biases.size() != t.hidden ||
        output_weights.size() != t.outputs * t.hidden || output_biases.size() != t.outputs ||
        hidden_tf.size() != t.hidden || output_tf.size() != t.outputs)
        throw std::invalid_argument("Network: array sizes do not match topology");
    (void)kind();
    auto finite = [](std::span<const double> v) {
        for (double d : v)
            if (!std::isfinite(d))
                return false;
        return true;
    };
    bool ok = finite(hidden_weights) && finite(hidden_biases) && finite(output_weights) &&
              finite(output_biases);
    for (const auto& tf : hidden_tf)
        ok = ok && finite(tf.params());
    for (const auto& tf : output_tf)
        ok = ok && finite(tf.params());
    if (!ok)
        throw std::invalid_argument("Network: non-finite parameter");
}

namespace {

void layer(std::span<const double> in, std::span<const double> weights,
           std::span<const double> biases, std::span<const TransferSpec> tf, std::span<double> out)
{
    const std::size_t n_in = in.size();
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double* w = weights.data() + j * n_in;
        double net = 0.0;
        for (std::size_t i = 0; i < n_in; ++i)
            net += w[i] * in[i];
        out[j] = eval(tf[j], net - biases[j]);
    }
}

}  // namespace

std::span<const double> forward(const Network& net, std::span<const double> x,
                                ForwardWorkspace& ws)
{
    const auto& t = net.topology;
    if (x.size() != t.inputs)
        throw std::invalid_argument("forward: expected " + std::to_string(t.inputs) +
                                    " inputs, got " + std::to_string(x.size()));
    ws.hidden.resize(t.hidden);
    ws.output.resize(t.outputs);
    layer(x, net.hidden_weights, net.hidden_biases, net.hidden_tf, ws.hidden);
    layer(ws.hidden, net.output_weights, net.output_biases, net.output_tf, ws.output);
    return ws.output;
}

std::vector<double> forward(const Network& net, std::span<const double> x)
{
    ForwardWorkspace ws;
    forward(net, x, ws);
    return std::move(ws.output);
}

std::size_t argmax(std::span<const double> outputs)
{
    if (outputs.empty())
        throw std::invalid_argument("argmax: empty output vector");
    std::size_t best = 0;
    for (std::size_t k = 1; k < outputs.size(); ++k)
        if (outputs[k] > outputs[best])
            best = k;
    return best;
}

std::size_t predict_class(const Network& net, std::span<const double> x)
{
    ForwardWorkspace ws;
    return argmax(forward(net, x, ws));
}

}  // namespace nnaf
