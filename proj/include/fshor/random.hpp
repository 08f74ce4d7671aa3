#pragma once

#include <cstdint>
#include <random>

namespace fshor {

// Every seeded stream in the library is std::mt19937_64, whose output sequence
// is fixed by the C++ standard. The helpers below consume raw engine words
// directly so results do not depend on a library's distribution classes.
using Rng = std::mt19937_64;

/// Uniform integer in [0, bound) by rejection on the top of the 64-bit range.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = rng();
    while (v >= limit) v = rng();
    return v % bound;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Derives an independent stream seed for (seed, stream) pairs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace fshor
