#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <random>

namespace jrirs {

// The raw engine output is fully specified by the standard; the distribution
// helpers below are hand-rolled so draws are bit-identical across standard
// library implementations.
using Engine = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Substream seed for the counter path (base, k0, k1, ...). Each key is
// folded in through one splitmix64 round, so distinct paths give
// statistically independent engines and no path depends on draw order.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) noexcept
{
    std::uint64_t s = splitmix64(base);
    for (std::uint64_t k : path) {
        s = splitmix64(s ^ splitmix64(k + 0x632BE59BD9B4E019ULL));
    }
    return s;
}

inline Engine make_engine(std::uint64_t seed) { return Engine{seed}; }

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// Uniform integer in [0, n). n must be > 0.
inline std::uint64_t uniform_index(Engine& rng, std::uint64_t n)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

// Circularly-symmetric complex Gaussian with E|z|^2 = 1 (Box-Muller).
inline std::complex<double> complex_normal(Engine& rng)
{
    constexpr double two_pi = 6.283185307179586476925286766559;
    double u1 = uniform01(rng);
    while (u1 <= 0.0) u1 = uniform01(rng);
    const double u2 = uniform01(rng);
    const double radius = std::sqrt(-std::log(u1));
    return std::polar(radius, two_pi * u2);
}

}  // namespace jrirs
