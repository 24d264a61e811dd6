#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gp {

// splitmix64 step; used both as a generator finalizer and to derive
// independent sub-seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic sub-seed: derive_seed(master, tag) is stable across runs and
// platforms, and distinct tags give independent streams.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    std::uint64_t s = base ^ (0x632be59bd9b4e019ULL * (tag + 1));
    std::uint64_t a = splitmix64(s);
    std::uint64_t b = splitmix64(s);
    return a ^ (b << 1);
}

// Small self-contained generator (xoshiro-style pipeline on splitmix64).
// Avoids std::*_distribution so that streams are identical on every
// implementation, which the byte-identical-output contract relies on.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t bits() { return splitmix64(state_); }

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(bits() >> 11) * 0x1.0p-53;
    }

    // uniform in [lo, hi)
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // uniform over {0, ..., n-1}; n must be a power of two for exactness,
    // otherwise falls back to rejection sampling.
    std::uint64_t below(std::uint64_t n) {
        if ((n & (n - 1)) == 0) return bits() & (n - 1);
        const std::uint64_t limit = n * (~0ULL / n);
        std::uint64_t v;
        do {
            v = bits();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // standard normal via Box-Muller; second value of each pair is cached
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(theta);
        has_cached_ = true;
        return r * std::cos(theta);
    }

    double normal(double mean, double sigma) { return mean + sigma * normal(); }

private:
    std::uint64_t state_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace gp
