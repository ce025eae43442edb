#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace nnaf {

/// MT19937 stream with platform-independent draws.
///
/// The std:: distributions are implementation-defined, so two standard
/// libraries may map the same engine output to different values. Every
/// draw here is a fixed function of the raw 32-bit engine words, which
/// keeps seeded runs byte-reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Uniform on [0, 1) with 53 bits of resolution (two engine words).
    double uniform01();
    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    /// Uniform integer in [0, n); n must be > 0. Unbiased (rejection).
    std::size_t index(std::size_t n);

    template <class T>
    void shuffle(std::span<T> items)
    {
        for (std::size_t i = items.size(); i > 1; --i)
            std::swap(items[i - 1], items[index(i)]);
    }

    std::uint32_t next_u32() { return static_cast<std::uint32_t>(engine_()); }

private:
    std::mt19937 engine_;
};

/// SplitMix64 finalizer over (seed, stream). Used to give every fold,
/// restart and grid cell its own independent, individually re-runnable seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace nnaf
