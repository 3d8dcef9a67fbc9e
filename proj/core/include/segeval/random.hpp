/**
 * Deterministic random draws for fixtures and the synthetic generator.
 *
 * The engine is std::mt19937_64, whose raw output sequence is pinned by the
 * standard, and all mappings below are fixed arithmetic on those raw draws
 * (the standard distribution objects are implementation-defined, so they
 * are avoided). A seed therefore reproduces identical streams on every
 * platform and standard library.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace segeval {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    /// Uniform integer in [lo, hi], both inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(next_u64() % span);
    }

    bool bernoulli(double p) { return next_unit() < p; }

    /// Box-Muller without caching, two unit draws per value.
    double normal(double mean, double sigma) {
        double u1 = next_unit();
        const double u2 = next_unit();
        if (u1 <= 0.0) u1 = 0x1.0p-53;
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sigma * r * std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace segeval
