#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "dyad/expansion.hpp"
#include "dyad/interval.hpp"
#include "dyad/step_function.hpp"

namespace dyad {

/// Truncated dyadic maximal function: (Mf)(x) is the largest average of |f|
/// over dyadic intervals containing x with scale in [min_scale, root.scale].
/// The output is constant on the width-2^{min_scale} cells of the root.
inline StepFunction dyadic_maximal(const StepFunction& f, const DyadicInterval& root,
                                   int min_scale) {
    if (min_scale > root.scale)
        throw std::invalid_argument("dyadic_maximal: min_scale above root scale");
    require_support_inside(f, root, "dyadic_maximal");

    const int d = root.scale - min_scale;
    const std::size_t n = std::size_t{1} << d;
    const double w = std::ldexp(1.0, min_scale);
    const double x0 = root.left();

    std::vector<double> mass(n); // integral of |f| per finest cell
    for (std::size_t i = 0; i < n; ++i) {
        const double a = x0 + std::ldexp(static_cast<double>(i), min_scale);
        double s = 0.0;
        // split on |f|'s sign changes inside the cell
        const auto& xs = f.breakpoints();
        double prev = a;
        for (auto it = std::upper_bound(xs.begin(), xs.end(), a);
             it != xs.end() && *it < a + w; ++it) {
            s += std::abs(f.integral_over(prev, *it));
            prev = *it;
        }
        s += std::abs(f.integral_over(prev, a + w));
        mass[i] = s;
    }

    std::vector<double> out(n, 0.0);
    // sweep scales coarse to fine, carrying the best ancestor average
    std::vector<double> level_mass{0.0};
    {
        double total = 0.0;
        for (double m : mass) total += m;
        level_mass[0] = total;
    }
    std::vector<double> best{level_mass[0] / root.length()};
    for (int level = 1; level <= d; ++level) {
        const std::size_t count = std::size_t{1} << level;
        const double inv_len = std::ldexp(1.0, -(root.scale - level));
        std::vector<double> lm(count), lb(count);
        // recompute masses at this level from the finest cells
        const std::size_t span = n >> level;
        for (std::size_t i = 0; i < count; ++i) {
            double s = 0.0;
            for (std::size_t j = i * span; j < (i + 1) * span; ++j) s += mass[j];
            lm[i] = s;
            lb[i] = std::max(best[i / 2], s * inv_len);
        }
        level_mass = std::move(lm);
        best = std::move(lb);
    }
    for (std::size_t i = 0; i < n; ++i) out[i] = best[i];

    std::vector<double> xs(n + 1);
    for (std::size_t i = 0; i <= n; ++i)
        xs[i] = x0 + std::ldexp(static_cast<double>(i), min_scale);
    return StepFunction(std::move(xs), std::move(out));
}

} // namespace dyad
