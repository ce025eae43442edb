#include <doctest.h>

#include <stdexcept>

#include <vector>

#include "nnaf/genotype.hpp"
#include "nnaf/network.hpp"
#include "nnaf/random.hpp"

using namespace nnaf;
using doctest::Approx;

namespace {

// tests/oracles/arithmetic_values.py
constexpr double forward_221_half_weights = 0.675037527376823696831426017977;

Network random_net(const NetworkTopology& t, TransferKind kind, Rng& rng)
{
    const auto layout = layout_for(t, kind);
    return decode(random_genotype(layout, GeneBounds::uniform(layout.total, -1.5, 1.5), rng));
}

}  // namespace

TEST_CASE("zero network outputs phi(0) everywhere")
{
    const NetworkTopology t{4, 5, 3};
    const std::vector<double> x{0.3, -2, 7, 1};
    for (double y : forward(Network::zeros(t, TransferKind::SigFix), x))
        CHECK(y == 0.5);
    for (double y : forward(Network::zeros(t, TransferKind::TanhFix), x))
        CHECK(y == 0.0);
}

TEST_CASE("2-2-1 forward pass matches the composed scalar oracle")
{
    Network net = Network::zeros({2, 2, 1}, TransferKind::SigFix);
    std::fill(net.hidden_weights.begin(), net.hidden_weights.end(), 0.5);
    std::fill(net.output_weights.begin(), net.output_weights.end(), 0.5);
    const std::vector<double> x{1, 1};
    CHECK(forward(net, x)[0] == Approx(forward_221_half_weights).epsilon(1e-15));
}

TEST_CASE("bias is subtracted from the net input")
{
    Network net = Network::zeros({1, 1, 1}, TransferKind::TanhFix);
    net.hidden_weights[0] = 1.0;
    net.hidden_biases[0] = 0.25;
    net.output_weights[0] = 1.0;
    const std::vector<double> x{1.0};
    CHECK(forward(net, x)[0] == Approx(std::tanh(std::tanh(0.75))));
}

TEST_CASE("dimension mismatch is an error")
{
    const Network net = Network::zeros({3, 2, 2}, TransferKind::SigFix);
    const std::vector<double> x{1, 2};
    CHECK_THROWS_AS(forward(net, x), std::invalid_argument);
}

TEST_CASE("argmax and predict_class")
{
    const std::vector<double> a{0.9, 0.1, 0.2}, b{0.4, 0.4, 0.1}, c{0.1, 0.3, 0.3};
    CHECK(argmax(a) == 0);
    CHECK(argmax(b) == 0);
    CHECK(argmax(c) == 1);

    Network net = Network::zeros({1, 1, 3}, TransferKind::SigFix);
    net.output_biases = {0.0, -1.0, 0.0};  // subtracting a negative bias raises output 1
    const std::vector<double> x{0.0};
    CHECK(predict_class(net, x) == 1);
}

TEST_CASE("forward is deterministic and logistic outputs stay in (0, 1)")
{
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const Network net = random_net({4, 5, 3}, TransferKind::SigFix, rng);
        std::vector<double> x(4);
        for (auto& v : x)
            v = rng.uniform(-20, 20);
        const auto y1 = forward(net, x);
        const auto y2 = forward(net, x);
        CHECK(y1 == y2);
        for (double y : y1) {
            CHECK(y > 0.0);
            CHECK(y < 1.0);
        }
    }
}

TEST_CASE("permuting hidden nodes leaves the output unchanged")
{
    Rng rng(11);
    for (auto kind : all_transfer_kinds) {
        const NetworkTopology t{3, 4, 2};
        const Network net = random_net(t, kind, rng);
        const std::vector<std::size_t> perm{2, 0, 3, 1};
        Network p = net;
        for (std::size_t j = 0; j < t.hidden; ++j) {
            const std::size_t src = perm[j];
            for (std::size_t i = 0; i < t.inputs; ++i)
                p.hidden_weights[j * t.inputs + i] = net.hidden_weights[src * t.inputs + i];
            p.hidden_biases[j] = net.hidden_biases[src];
            p.hidden_tf[j] = net.hidden_tf[src];
            for (std::size_t k = 0; k < t.outputs; ++k)
                p.output_weights[k * t.hidden + j] = net.output_weights[k * t.hidden + src];
        }
        const std::vector<double> x{0.2, 0.9, 0.4};
        const auto a = forward(net, x), b = forward(p, x);
        for (std::size_t k = 0; k < a.size(); ++k)
            CHECK(std::abs(a[k] - b[k]) < 1e-12);
    }
}

TEST_CASE("validate catches malformed networks")
{
    Network net = Network::zeros({2, 2, 2}, TransferKind::SigAdp);
    CHECK_NOTHROW(net.validate());
    net.output_tf[1] = TransferSpec(TransferKind::Gaussian);
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
    net = Network::zeros({2, 2, 2}, TransferKind::SigFix);
    net.hidden_biases.pop_back();
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
    net = Network::zeros({2, 2, 2}, TransferKind::SigFix);
    net.output_weights[0] = NAN;
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
    CHECK_THROWS_AS((NetworkTopology{0, 1, 1}.validate()), std::invalid_argument);
}
