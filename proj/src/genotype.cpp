#include "nnaf/genotype.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace nnaf {

GenotypeLayout layout_for(const NetworkTopology& topology, TransferKind kind)
{
    topology.validate();
    GenotypeLayout l;
    l.topology = topology;
    l.kind = kind;
    const auto& t = topology;
    l.n_weight_genes = t.hidden * t.inputs + t.outputs * t.hidden;
    l.n_bias_genes = t.hidden + t.outputs;
    l.n_tf_genes = (t.hidden + t.outputs) * param_count(kind);
    l.total = l.n_weight_genes + l.n_bias_genes + l.n_tf_genes;
    return l;
}

GeneBounds::GeneBounds(std::vector<std::pair<double, double>> bounds) : bounds_(std::move(bounds))
{
    for (std::size_t i = 0; i < bounds_.size(); ++i)
        if (!(bounds_[i].first < bounds_[i].second))
            throw std::invalid_argument("GeneBounds: lo >= hi at gene " + std::to_string(i));
}

GeneBounds GeneBounds::uniform(std::size_t n, double lo, double hi)
{
    return GeneBounds(std::vector<std::pair<double, double>>(n, {lo, hi}));
}

bool GeneBounds::contains(std::span<const double> genes) const
{
    if (genes.size() != bounds_.size())
        return false;
    for (std::size_t i = 0; i < genes.size(); ++i)
        if (genes[i] < bounds_[i].first || genes[i] > bounds_[i].second)
            return false;
    return true;
}

bool is_scale_param(TransferKind kind, std::size_t param_index)
{
    switch (kind) {
    case TransferKind::Gaussian: return param_index == 0;  // (sigma, mu)
    case TransferKind::Beta: return param_index >= 1;      // (theta, sigma, p, q)
    default: return false;
    }
}

namespace {

TransferSpec decode_spec(TransferKind kind, const double* genes)
{
    std::array<double, TransferSpec::max_params> params{};
    const std::size_t n = param_count(kind);
    for (std::size_t p = 0; p < n; ++p) {
        params[p] = genes[p];
        if (is_scale_param(kind, p))
            params[p] = std::clamp(params[p], scale_param_min, scale_param_max);
    }
    return TransferSpec(kind, std::span<const double>(params.data(), n));
}

}  // namespace

Network decode(const GenotypeLayout& layout, std::span<const double> genes)
{
    if (genes.size() != layout.total)
        throw std::invalid_argument("decode: genotype has " + std::to_string(genes.size()) +
                                    " genes, layout expects " + std::to_string(layout.total));
    const auto& t = layout.topology;
    Network net;
    net.topology = t;
    const double* g = genes.data();
    auto take = [&g](std::vector<double>& dst, std::size_t n) {
        dst.assign(g, g + n);
        g += n;
    };
    take(net.hidden_weights, t.hidden * t.inputs);
    take(net.output_weights, t.outputs * t.hidden);
    take(net.hidden_biases, t.hidden);
    take(net.output_biases, t.outputs);

    const std::size_t per_node = param_count(layout.kind);
    net.hidden_tf.reserve(t.hidden);
    for (std::size_t j = 0; j < t.hidden; ++j, g += per_node)
        net.hidden_tf.push_back(decode_spec(layout.kind, g));
    net.output_tf.reserve(t.outputs);
    for (std::size_t k = 0; k < t.outputs; ++k, g += per_node)
        net.output_tf.push_back(decode_spec(layout.kind, g));
    return net;
}

Network decode(const Genotype& g)
{
    return decode(g.layout, g.genes);
}

Genotype encode(const Network& net)
{
    net.validate();
    Genotype g;
    g.layout = layout_for(net.topology, net.kind());
    g.genes.reserve(g.layout.total);
    auto put = [&g](std::span<const double> v) { g.genes.insert(g.genes.end(), v.begin(), v.end()); };
    put(net.hidden_weights);
    put(net.output_weights);
    put(net.hidden_biases);
    put(net.output_biases);
    for (const auto& tf : net.hidden_tf)
        put(tf.params());
    for (const auto& tf : net.output_tf)
        put(tf.params());
    return g;
}

Genotype random_genotype(const GenotypeLayout& layout, const GeneBounds& bounds, Rng& rng)
{
    if (bounds.size() != layout.total)
        throw std::invalid_argument("random_genotype: bounds do not match layout");
    Genotype g;
    g.layout = layout;
    g.genes.resize(layout.total);
    for (std::size_t i = 0; i < layout.total; ++i)
        g.genes[i] = rng.uniform(bounds.lo(i), bounds.hi(i));
    return g;
}

}  // namespace nnaf
