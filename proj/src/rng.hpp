#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

// Seeded randomness used everywhere in the toolkit.
//
// The generator is std::mt19937_64, whose output sequence is fixed by the
// C++ standard, so identical seeds reproduce identical results on any
// platform. Independent streams are derived from a base seed plus integer
// tags via a splitmix64 chain. Draw accounting: uniform01() consumes one
// engine output, normal() consumes exactly two.

namespace qcbm::rng {

using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Stream tags keep seeds for unrelated purposes decoupled even when the
// caller passes the same base seed.
enum Stream : std::uint64_t {
    kSwarm = 1,
    kShots = 2,
    kDataset = 3,
    kQbas = 4,
    kBootstrap = 5,
    kIsing = 6,
};

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t a = 0,
                               std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    return h;
}

inline Engine make_engine(std::uint64_t seed, std::uint64_t a = 0,
                          std::uint64_t b = 0, std::uint64_t c = 0) {
    return Engine(derive(seed, a, b, c));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
    return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(Engine& eng, double lo, double hi) {
    return lo + uniform01(eng) * (hi - lo);
}

// Index in [0, n). The 2^-53 truncation bias is irrelevant at our sizes.
inline std::size_t uniform_index(Engine& eng, std::size_t n) {
    auto idx = static_cast<std::size_t>(uniform01(eng) * static_cast<double>(n));
    return idx < n ? idx : n - 1;
}

// Box-Muller (cosine branch only, no caching).
inline double normal(Engine& eng, double mean, double stddev) {
    const double u1 = 1.0 - uniform01(eng);  // (0, 1], keeps log finite
    const double u2 = uniform01(eng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace qcbm::rng
