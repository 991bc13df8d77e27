// Test-only reference implementations, kept independent of the library's
// computational paths: literal sums over intervals, brute-force suprema,
// quadrature, and a dense SVD.
#pragma once

#include <cmath>
#include <vector>

#include "dyad/expansion.hpp"
#include "dyad/haar.hpp"
#include "dyad/interval.hpp"
#include "dyad/paraproduct.hpp"
#include "dyad/step_function.hpp"

namespace oracles {

using dyad::DyadicInterval;
using dyad::HaarExpansion;
using dyad::StepFunction;

inline std::vector<DyadicInterval> window_intervals(const DyadicInterval& root, int min_scale) {
    std::vector<DyadicInterval> out;
    for (int scale = root.scale; scale >= min_scale; --scale) {
        const int level = root.scale - scale;
        for (std::int64_t j = 0; j < (std::int64_t{1} << level); ++j)
            out.push_back({scale, (root.position << level) + j});
    }
    return out;
}

/// Literal evaluation of the paraproduct sum, every inner product by direct
/// integration and every term accumulated as a step function.
inline StepFunction naive_paraproduct(const dyad::Signature& sig, const StepFunction& f1,
                                      const StepFunction& f2, const DyadicInterval& root,
                                      int min_scale) {
    using dyad::HaarKind;
    StepFunction acc;
    for (const DyadicInterval& i : window_intervals(root, min_scale)) {
        const auto letter = [&](int eps) {
            return dyad::haar_step(i, eps == 0 ? HaarKind::H0 : HaarKind::H1);
        };
        const double a = inner_product(f1, letter(sig.e1)) / std::sqrt(i.length());
        const double b = inner_product(f2, letter(sig.e2));
        if (a * b != 0.0) acc = acc + (a * b) * letter(sig.e3);
    }
    return acc;
}

/// Brute-force BMO: for every window interval J, sum the squared
/// coefficients of all window intervals inside J.
inline double naive_bmo(const HaarExpansion& e) {
    double best = 0.0;
    const auto all = window_intervals(e.root(), e.min_scale());
    for (const DyadicInterval& j : all) {
        double s = 0.0;
        for (const DyadicInterval& i : all)
            if (j.contains(i)) s += e.coeff(i) * e.coeff(i);
        best = std::max(best, s / j.length());
    }
    return std::sqrt(best);
}

/// Brute-force truncated dyadic maximal function, evaluated per finest cell.
inline StepFunction naive_maximal(const StepFunction& f, const DyadicInterval& root,
                                  int min_scale) {
    const int d = root.scale - min_scale;
    const std::size_t n = std::size_t{1} << d;
    std::vector<double> xs(n + 1), vs(n);
    for (std::size_t i = 0; i <= n; ++i)
        xs[i] = root.left() + std::ldexp(static_cast<double>(i), min_scale);
    StepFunction absf = StepFunction(f.breakpoints(), [&] {
        std::vector<double> v = f.values();
        for (double& x : v) x = std::abs(x);
        return v;
    }());
    for (std::size_t c = 0; c < n; ++c) {
        const double x = 0.5 * (xs[c] + xs[c + 1]);
        double best = 0.0;
        for (int scale = min_scale; scale <= root.scale; ++scale) {
            const DyadicInterval i = DyadicInterval::containing(x, scale);
            best = std::max(best, absf.integral_over(i.left(), i.right()) / i.length());
        }
        vs[c] = best;
    }
    return StepFunction(std::move(xs), std::move(vs));
}

/// Midpoint quadrature of \int_a^b g on a uniform grid.
template <class G>
double quadrature(G&& g, double a, double b, int cells) {
    double s = 0.0;
    const double h = (b - a) / cells;
    for (int i = 0; i < cells; ++i) s += g(a + (i + 0.5) * h);
    return s * h;
}

/// Truncated principal-value integral of f(x-y)/y over eps < |y| < range,
/// quadratured after the substitution y = +-e^u which removes the 1/y weight:
/// the two sides combine to int [f(x - e^u) - f(x + e^u)] du.
inline double pv_quadrature(const StepFunction& f, double x, double eps, double range,
                            int cells) {
    return quadrature(
        [&](double u) {
            const double y = std::exp(u);
            return f.eval(x - y) - f.eval(x + y);
        },
        std::log(eps), std::log(range), cells);
}

} // namespace oracles
