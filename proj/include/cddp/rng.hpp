#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cddp {

// Seeded random stream with fixed sampling algorithms. std::mt19937_64 is
// specified by the standard, but the std distributions are not; generation
// determinism is part of the instance-file contract, so the transforms are
// pinned here.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [lo, hi] inclusive, rejection-sampled to avoid bias.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        if (span == 0) return static_cast<std::int64_t>(engine_());  // full 64-bit range
        const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
        std::uint64_t v = engine_();
        while (v >= limit) v = engine_();
        return lo + static_cast<std::int64_t>(v % span);
    }

    // Standard normal via Box-Muller (both draws consumed every call).
    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Uniform point in the disk of the given radius (polar transform).
    void disk(double radius, double& dx, double& dy) {
        const double r = radius * std::sqrt(uniform());
        const double phi = 2.0 * M_PI * uniform();
        dx = r * std::cos(phi);
        dy = r * std::sin(phi);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace cddp
