#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace slcm {

// Every random choice in the library flows through an explicitly passed
// generator of this type; nothing reads global or wall-clock state.
using Rng = std::mt19937_64;

inline std::size_t uniform_index(Rng& rng, std::size_t n)
{
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi)
{
    if (lo == hi) {
        return lo;
    }
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng);
}

inline bool bernoulli(Rng& rng, double p)
{
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    std::bernoulli_distribution dist(p);
    return dist(rng);
}

// Derives an independent stream from a base seed, used where several
// parties (founders, scenario seeds) each need their own generator.
inline Rng derive_rng(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

} // namespace slcm
