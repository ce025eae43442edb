#include "nnaf/backprop.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "nnaf/genotype.hpp"

namespace nnaf {

void BpConfig::validate() const
{
    if (!(learning_rate >= 0.0))
        throw std::invalid_argument("learning rate must be non-negative");
    if (!(momentum >= 0.0 && momentum < 1.0))
        throw std::invalid_argument("momentum must lie in [0, 1)");
    if (epochs < 1)
        throw std::invalid_argument("epochs must be >= 1");
}

namespace {

void require_fixed(const Network& net)
{
    const TransferKind kind = net.kind();
    if (!is_fixed(kind))
        throw std::invalid_argument("backpropagation supports sigfix and tanhfix only, got " +
                                    std::string(to_string(kind)));
}

// Fills g; ws must hold the forward pass for x.
void backward(const Network& net, std::span<const double> x, std::span<const double> target,
              const ForwardWorkspace& ws, std::vector<double>& output_delta,
              std::vector<double>& hidden_delta, Gradient& g)
{
    const auto& t = net.topology;
    const TransferKind kind = net.output_tf.front().kind();

    // delta = dE/dnet where net = sum w x - b.
    output_delta.resize(t.outputs);
    for (std::size_t k = 0; k < t.outputs; ++k)
        output_delta[k] = (ws.output[k] - target[k]) * derivative_from_output(kind, ws.output[k]);
    hidden_delta.assign(t.hidden, 0.0);
    for (std::size_t k = 0; k < t.outputs; ++k)
        for (std::size_t j = 0; j < t.hidden; ++j)
            hidden_delta[j] += output_delta[k] * net.output_weights[k * t.hidden + j];
    for (std::size_t j = 0; j < t.hidden; ++j)
        hidden_delta[j] *= derivative_from_output(kind, ws.hidden[j]);

    g.output_weights.resize(net.output_weights.size());
    g.output_biases.resize(t.outputs);
    for (std::size_t k = 0; k < t.outputs; ++k) {
        for (std::size_t j = 0; j < t.hidden; ++j)
            g.output_weights[k * t.hidden + j] = output_delta[k] * ws.hidden[j];
        g.output_biases[k] = -output_delta[k];
    }
    g.hidden_weights.resize(net.hidden_weights.size());
    g.hidden_biases.resize(t.hidden);
    for (std::size_t j = 0; j < t.hidden; ++j) {
        for (std::size_t i = 0; i < t.inputs; ++i)
            g.hidden_weights[j * t.inputs + i] = hidden_delta[j] * x[i];
        g.hidden_biases[j] = -hidden_delta[j];
    }
}

void step(std::vector<double>& w, std::vector<double>& delta, const std::vector<double>& grad,
          double eta, double momentum)
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        delta[i] = -eta * grad[i] + momentum * delta[i];
        w[i] += delta[i];
    }
}

}  // namespace

double sample_loss(const Network& net, std::span<const double> x, std::span<const double> target)
{
    const auto y = forward(net, x);
    if (target.size() != y.size())
        throw std::invalid_argument("sample_loss: target size mismatch");
    double e = 0.0;
    for (std::size_t k = 0; k < y.size(); ++k)
        e += 0.5 * (y[k] - target[k]) * (y[k] - target[k]);
    return e;
}

Gradient loss_gradient(const Network& net, std::span<const double> x, std::span<const double> target)
{
    require_fixed(net);
    if (target.size() != net.topology.outputs)
        throw std::invalid_argument("loss_gradient: target size mismatch");
    ForwardWorkspace ws;
    forward(net, x, ws);
    std::vector<double> od, hd;
    Gradient g;
    backward(net, x, target, ws, od, hd, g);
    return g;
}

Network init_bp_network(const NetworkTopology& topology, TransferKind kind, Rng& rng)
{
    if (!is_fixed(kind))
        throw std::invalid_argument("backpropagation supports sigfix and tanhfix only, got " +
                                    std::string(to_string(kind)));
    const auto layout = layout_for(topology, kind);
    return decode(random_genotype(layout, GeneBounds::uniform(layout.total, init_lo, init_hi), rng));
}

Network train_bp(Network net, const Dataset& train, const BpConfig& cfg, Rng& rng)
{
    cfg.validate();
    net.validate();
    require_fixed(net);
    if (net.topology.inputs != train.n_features || net.topology.outputs != train.class_count)
        throw std::invalid_argument("train_bp: network does not fit the dataset");
    if (train.size() == 0)
        throw std::invalid_argument("train_bp: empty training set");

    Gradient delta{std::vector<double>(net.hidden_weights.size(), 0.0),
                   std::vector<double>(net.hidden_biases.size(), 0.0),
                   std::vector<double>(net.output_weights.size(), 0.0),
                   std::vector<double>(net.output_biases.size(), 0.0)};
    Gradient g;
    ForwardWorkspace ws;
    std::vector<double> od, hd, target(net.topology.outputs);
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        for (std::size_t s : order) {
            const auto x = train.row(s);
            std::fill(target.begin(), target.end(), 0.0);
            target[train.labels[s]] = 1.0;
            forward(net, x, ws);
            backward(net, x, target, ws, od, hd, g);
            step(net.output_weights, delta.output_weights, g.output_weights, cfg.learning_rate, cfg.momentum);
            step(net.output_biases, delta.output_biases, g.output_biases, cfg.learning_rate, cfg.momentum);
            step(net.hidden_weights, delta.hidden_weights, g.hidden_weights, cfg.learning_rate, cfg.momentum);
            step(net.hidden_biases, delta.hidden_biases, g.hidden_biases, cfg.learning_rate, cfg.momentum);
        }
    }
    return net;
}

}  // namespace nnaf
