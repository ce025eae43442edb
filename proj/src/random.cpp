#include "nnaf/random.hpp"

#include <stdexcept>

namespace nnaf {

namespace {

std::mt19937 seeded_engine(std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32)};
    return std::mt19937(seq);
}

std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : engine_(seeded_engine(seed)) {}

double Rng::uniform01()
{
    const std::uint64_t hi = next_u32() >> 5;  // 27 bits
    const std::uint64_t lo = next_u32() >> 6;  // 26 bits
    return static_cast<double>((hi << 26) | lo) * 0x1.0p-53;
}

std::size_t Rng::index(std::size_t n)
{
    if (n == 0)
        throw std::invalid_argument("Rng::index: empty range");
    if (n == 1)
        return 0;
    const std::uint64_t range = std::uint64_t{1} << 32;
    if (n > range)
        throw std::invalid_argument("Rng::index: range exceeds 2^32");
    const std::uint64_t limit = range - range % n;
    std::uint64_t draw;
    do {
        draw = next_u32();
    } while (draw >= limit);
    return static_cast<std::size_t>(draw % n);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    return splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

}  // namespace nnaf
