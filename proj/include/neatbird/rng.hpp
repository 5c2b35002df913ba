#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace neatbird {

// Deterministic RNG with fixed-algorithm derived distributions.
// mt19937_64 output is specified bit-for-bit by the standard; the helpers
// below avoid std::uniform_real_distribution and friends, whose algorithms
// are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_double();
    }

    // Uniform integer in [0, n).
    std::uint64_t uniform_index(std::uint64_t n) {
        return engine_() % n;
    }

    bool chance(double p) { return next_double() < p; }

    // Box-Muller, one sample per call (the spare is discarded so draw
    // counts stay easy to reason about).
    double gaussian(double mean, double sigma) {
        double u1 = next_double();
        double u2 = next_double();
        while (u1 <= 0.0) u1 = next_double();
        double z = std::sqrt(-2.0 * std::log(u1)) *
                   std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
        return mean + sigma * z;
    }

    // Derive an independent stream, e.g. one per sweep cell.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
        // splitmix64 finalizer
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace neatbird
