#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "nnaf/network.hpp"
#include "nnaf/random.hpp"
#include "nnaf/transfer.hpp"

namespace nnaf {

/// Gene ordering of a flat network encoding:
///   [hidden weights (row-major) | output weights (row-major) |
///    hidden biases | output biases |
///    hidden TF params (node-major) | output TF params (node-major)]
struct GenotypeLayout {
    NetworkTopology topology;
    TransferKind kind = TransferKind::SigFix;
    std::size_t n_weight_genes = 0;
    std::size_t n_bias_genes = 0;
    std::size_t n_tf_genes = 0;
    std::size_t total = 0;

    std::size_t bias_offset() const { return n_weight_genes; }
    std::size_t tf_offset() const { return n_weight_genes + n_bias_genes; }

    friend bool operator==(const GenotypeLayout&, const GenotypeLayout&) = default;
};

GenotypeLayout layout_for(const NetworkTopology& topology, TransferKind kind);

struct Genotype {
    std::vector<double> genes;
    GenotypeLayout layout;
};

/// Per-gene (lo, hi) box used for initialization and ABC scout resets.
class GeneBounds {
public:
    GeneBounds() = default;
    /// Throws std::invalid_argument unless lo < hi for every pair.
    explicit GeneBounds(std::vector<std::pair<double, double>> bounds);
    static GeneBounds uniform(std::size_t n, double lo, double hi);

    std::size_t size() const { return bounds_.size(); }
    double lo(std::size_t i) const { return bounds_[i].first; }
    double hi(std::size_t i) const { return bounds_[i].second; }
    bool contains(std::span<const double> genes) const;

private:
    std::vector<std::pair<double, double>> bounds_;
};

/// Initialization box for every gene, transfer parameters included.
inline constexpr double init_lo = -1.5;
inline constexpr double init_hi = 1.5;

/// Scale parameters (Gaussian sigma; Beta sigma, p, q) are clamped into
/// this range when a genotype is decoded.
inline constexpr double scale_param_min = 0.05;
inline constexpr double scale_param_max = 10.0;

/// True for positions within a node's parameter block that hold a scale
/// parameter subject to clamping.
bool is_scale_param(TransferKind kind, std::size_t param_index);

/// Builds the network a genotype encodes. Scale parameters are clamped; all
/// other genes pass through unchanged. Throws std::invalid_argument if the
/// gene count does not match the layout.
Network decode(const Genotype& g);
Network decode(const GenotypeLayout& layout, std::span<const double> genes);

/// Inverse of decode on the unclamped region. Throws std::invalid_argument
/// for malformed or mixed-family networks.
Genotype encode(const Network& net);

/// Every gene uniform in its bounds; the draw order is gene order.
Genotype random_genotype(const GenotypeLayout& layout, const GeneBounds& bounds, Rng& rng);

}  // namespace nnaf
