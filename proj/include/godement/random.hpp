#pragma once

// Counter-based random numbers: draw k of stream `seed` is a pure function of
// (seed, k), so any consumer can reproduce a sample without shared state.
// The mixer is SplitMix64's finalizer applied to seed + (k+1)*golden.

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numbers>

namespace godement {

inline constexpr std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Combines a base seed with a sequence of tags (group index, trial id, ...)
/// into an independent seed.
inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
    std::uint64_t h = splitmix64(seed + 0x9E3779B97F4A7C15ULL);
    for (std::uint64_t t : tags) h = splitmix64(h ^ (t + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2)));
    return h;
}

class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

    constexpr std::uint64_t bits(std::uint64_t k) const {
        return splitmix64(seed_ + (k + 1) * 0x9E3779B97F4A7C15ULL);
    }

    /// Uniform in (0, 1]; never returns 0 so log() is safe.
    double uniform(std::uint64_t k) const {
        return (static_cast<double>(bits(k) >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard complex Gaussian (E|z|^2 = 1) from counters 2k and 2k+1 via Box-Muller.
    std::complex<double> complex_gaussian(std::uint64_t k) const {
        const double r = std::sqrt(-std::log(uniform(2 * k)));
        const double theta = 2.0 * std::numbers::pi * uniform(2 * k + 1);
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    std::uint64_t seed() const { return seed_; }

private:
    std::uint64_t seed_;
};

}  // namespace godement
