#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gpbnb {

/// Identifier recorded in run metadata so outputs are traceable to the
/// exact generator algorithm.
inline constexpr const char* kRngId = "splitmix64-boxmuller-v1";

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Deterministic child seed for replication i of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

/// Counter-based generator: the k-th output is a pure function of
/// (seed, k), so streams are reproducible and freely parallelizable.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64() { return splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * counter_++); }

    /// Uniform in (0, 1), never exactly 0 or 1.
    double next_uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (one of the pair is discarded so the
    /// stream position stays a simple counter).
    double next_normal() {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Uniform integer in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

    double next_in(double lo, double hi) {
        return lo + (hi - lo) * next_uniform();
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

} // namespace gpbnb
