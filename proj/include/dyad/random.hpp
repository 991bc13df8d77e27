#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "dyad/expansion.hpp"

namespace dyad {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic random stream.  Gaussians come from an explicit Box-Muller
/// so sequences do not depend on the standard library's distribution
/// implementation; member streams derived by index keep ensembles
/// reproducible under any evaluation order.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    static RandomStream for_member(std::uint64_t seed, std::uint64_t member) {
        return RandomStream(splitmix64(seed ^ splitmix64(member + 1)));
    }

    /// Uniform on [0, 1).
    double uniform() {
        return std::ldexp(static_cast<double>(engine_() >> 11), -53);
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do { u1 = uniform(); } while (u1 <= 0.0);
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(t);
        have_spare_ = true;
        return r * std::cos(t);
    }

    std::uint64_t bits() { return engine_(); }

    std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Expansion with i.i.d. standard normal coefficients on `depth` levels
/// (finest stored scale root.scale - depth + 1).
inline HaarExpansion random_expansion(const DyadicInterval& root, int depth, bool with_mean,
                                      RandomStream& rng) {
    if (depth < 1) throw std::invalid_argument("random_expansion: depth must be positive");
    HaarExpansion e(root, root.scale - depth + 1);
    e.set_mean(with_mean ? rng.gaussian() : 0.0);
    for (auto& lvl : e.levels())
        for (auto& c : lvl) c = rng.gaussian();
    return e;
}

/// Step function with random Haar coefficients, resolved on the
/// width-2^{root.scale-depth} cells of the root.
inline StepFunction random_step_function(const DyadicInterval& root, int depth, bool with_mean,
                                         RandomStream& rng) {
    return synthesize(random_expansion(root, depth, with_mean, rng));
}

} // namespace dyad
