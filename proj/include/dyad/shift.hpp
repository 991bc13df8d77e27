#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "dyad/expansion.hpp"
#include "dyad/haar.hpp"
#include "dyad/interval.hpp"
#include "dyad/paraproduct.hpp"
#include "dyad/step_function.hpp"

namespace dyad {

/// Calibrated constant in <Hf, h_I> = kappa * sgn(I) * <f, h_Par(I)>.
/// Re-derived from basis pairs by calibrate_shift() and checked in tests.
inline constexpr double kShiftKappa = std::numbers::sqrt2 / 2.0;

/// Calibrated child weights of the degenerate commutator paraproduct;
/// both equal -kappa under the sign conventions of haar_g.
inline TildeCoefficients calibrated_tilde_coefficients() {
    return {-kShiftKappa, -kShiftKappa};
}

/// Haar shift over the window: sum of <f, h_I> g_I for I inside root with
/// scale >= min_scale.  Linear, L2-contractive on the window.
inline StepFunction haar_shift(const StepFunction& f, const DyadicInterval& root, int min_scale) {
    const HaarExpansion e = analyze(f, root, min_scale);
    const int d = e.depth();
    HaarExpansion out(root, min_scale - 1);
    for (int l = 0; l < d; ++l) {
        const auto& c = e.levels()[static_cast<std::size_t>(l)];
        auto& child = out.levels()[static_cast<std::size_t>(l + 1)];
        for (std::size_t i = 0; i < c.size(); ++i) {
            // g_I = kappa (h_left - h_right)
            child[2 * i] += kShiftKappa * c[i];
            child[2 * i + 1] -= kShiftKappa * c[i];
        }
    }
    return synthesize(out);
}

/// Coefficient-space form: out.coeffs[I] = kappa * sgn(I) * in.coeffs[Par(I)].
inline HaarExpansion haar_shift_coeffs(const HaarExpansion& e) {
    HaarExpansion out(e.root(), e.min_scale() - 1);
    for (int l = 0; l < e.depth(); ++l) {
        const auto& c = e.levels()[static_cast<std::size_t>(l)];
        auto& child = out.levels()[static_cast<std::size_t>(l + 1)];
        for (std::size_t i = 0; i < c.size(); ++i) {
            child[2 * i] = kShiftKappa * c[i];
            child[2 * i + 1] = -kShiftKappa * c[i];
        }
    }
    out.set_mean(0.0);
    return out;
}

/// Adjoint shift on the same window: sum of <f, g_I> h_I.
inline StepFunction haar_shift_adjoint(const StepFunction& f, const DyadicInterval& root,
                                       int min_scale) {
    const HaarExpansion e = analyze(f, root, min_scale - 1);
    const int d = root.scale - min_scale + 1;
    HaarExpansion out(root, min_scale);
    for (int l = 0; l < d; ++l) {
        const auto& child = e.levels()[static_cast<std::size_t>(l + 1)];
        auto& c = out.levels()[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = kShiftKappa * (child[2 * i] - child[2 * i + 1]);
    }
    return synthesize(out);
}

/// Haar shift over the full line restricted to scales in [min_scale,
/// max_scale]; only intervals meeting the support contribute.
inline StepFunction haar_shift_line(const StepFunction& f, int min_scale, int max_scale) {
    if (min_scale > max_scale)
        throw std::invalid_argument("haar_shift_line: empty scale window");
    auto sup = f.support();
    if (!sup) return {};

    // accumulate jump events of sum <f,h_I> g_I at the quarter points of I
    std::vector<std::pair<double, double>> events;
    for (int k = min_scale; k <= max_scale; ++k) {
        const double len = std::ldexp(1.0, k);
        const double inv_norm = inv_sqrt_length(k);
        const auto first = static_cast<std::int64_t>(std::floor(std::ldexp(sup->first, -k)));
        for (std::int64_t j = first; std::ldexp(static_cast<double>(j), k) < sup->second; ++j) {
            const double a = std::ldexp(static_cast<double>(j), k);
            const double mid = a + 0.5 * len;
            const double c = inv_norm * (f.integral_over(mid, a + len) - f.integral_over(a, mid));
            if (c == 0.0) continue;
            const double v = c * inv_norm; // |g_I| height times the coefficient
            // g levels: -v, +v, +v, -v on the quarters
            const double q = 0.25 * len;
            events.emplace_back(a, -v);
            events.emplace_back(a + q, 2.0 * v);
            events.emplace_back(a + 3.0 * q, -2.0 * v);
            events.emplace_back(a + len, v);
        }
    }
    if (events.empty()) return {};
    std::sort(events.begin(), events.end());
    std::vector<double> xs, vs;
    xs.reserve(events.size());
    vs.reserve(events.size());
    double level = 0.0;
    for (std::size_t i = 0; i < events.size();) {
        const double x = events[i].first;
        double jump = 0.0;
        for (; i < events.size() && events[i].first == x; ++i) jump += events[i].second;
        level += jump;
        if (!xs.empty() && xs.back() == x) continue;
        xs.push_back(x);
        vs.push_back(level);
    }
    vs.pop_back(); // level after the last event is zero
    return StepFunction(std::move(xs), std::move(vs));
}

/// b * Hf - H(b f), both shifts on the same window.
inline StepFunction commutator_direct(const StepFunction& b, const StepFunction& f,
                                      const DyadicInterval& root, int min_scale) {
    require_support_inside(b, root, "commutator_direct");
    require_support_inside(f, root, "commutator_direct");
    return b * haar_shift(f, root, min_scale) - haar_shift(b * f, root, min_scale);
}

struct CommutatorDecomposition {
    StepFunction p010_shift;  //  P^{0,1,0}(b, Hf)
    StepFunction shift_p010;  // -H P^{0,1,0}(b, f)
    StepFunction p001_shift;  //  P^{0,0,1}(b, Hf)
    StepFunction shift_p001;  // -H P^{0,0,1}(b, f)
    StepFunction degenerate;  //  calibrated signature-(0,0,0) term
    double residual = 0.0;

    StepFunction sum() const {
        return p010_shift + shift_p010 + p001_shift + shift_p001 + degenerate;
    }
};

/// Five-term paraproduct form of [b, H] f; exact (up to rounding) for
/// mean-zero inputs resolved on the width-2^{min_scale} cells of the root.
inline CommutatorDecomposition commutator_decomposed(const StepFunction& b,
                                                     const StepFunction& f,
                                                     const DyadicInterval& root, int min_scale) {
    if (!is_mean_zero(b) || !is_mean_zero(f))
        throw std::domain_error("commutator_decomposed: inputs must have zero mean on the root");
    if (!is_cell_resolved(b, min_scale) || !is_cell_resolved(f, min_scale))
        throw std::domain_error("commutator_decomposed: inputs must be cell-resolved at min_scale");

    const StepFunction hf = haar_shift(f, root, min_scale);
    CommutatorDecomposition out;
    out.p010_shift = paraproduct(Signature(0, 1, 0), b, hf, root, min_scale);
    out.shift_p010 =
        -haar_shift(paraproduct(Signature(0, 1, 0), b, f, root, min_scale), root, min_scale);
    out.p001_shift = paraproduct(Signature(0, 0, 1), b, hf, root, min_scale);
    out.shift_p001 =
        -haar_shift(paraproduct(Signature(0, 0, 1), b, f, root, min_scale), root, min_scale);
    out.degenerate = tilde_paraproduct(b, f, root, min_scale, calibrated_tilde_coefficients());
    out.residual = (commutator_direct(b, f, root, min_scale) - out.sum()).sup_norm();
    return out;
}

struct ShiftCalibration {
    double kappa = 0.0;        // from <H h_R, h_{left child}>
    double tilde_left = 0.0;   // degenerate-term weight on h_{I_left}
    double tilde_right = 0.0;  // degenerate-term weight on h_{I_right}
    double max_deviation = 0.0;
};

/// Re-derives the shift constants from basis pairs at depth <= 3: kappa from
/// the parent/sign coefficient identity, the degenerate-term weights from the
/// residual of the four non-degenerate commutator terms on (b,f) = (h_J, h_J).
inline ShiftCalibration calibrate_shift() {
    const DyadicInterval root = DyadicInterval::unit();
    const int min_scale = -3;
    ShiftCalibration cal;

    // kappa and its consistency across the window
    {
        const StepFunction h_root = haar_h(root);
        const StepFunction sh = haar_shift(h_root, root, min_scale);
        cal.kappa = inner_product(sh, haar_h(root.left_child()));
        for (int level = 0; level <= 2; ++level) {
            for (std::int64_t j = 0; j < (std::int64_t{1} << level); ++j) {
                const DyadicInterval parent{-level, j};
                const StepFunction shifted = haar_shift(haar_h(parent), root, min_scale);
                for (const DyadicInterval& child :
                     {parent.left_child(), parent.right_child()}) {
                    const double got = inner_product(shifted, haar_h(child));
                    const double want = cal.kappa * child.sign();
                    cal.max_deviation = std::max(cal.max_deviation, std::abs(got - want));
                }
            }
        }
    }

    // degenerate-term weights from (b, f) = (h_J, h_J)
    auto residual_after_four = [&](const StepFunction& b, const StepFunction& f) {
        const StepFunction hf = haar_shift(f, root, min_scale);
        return commutator_direct(b, f, root, min_scale) -
               paraproduct(Signature(0, 1, 0), b, hf, root, min_scale) +
               haar_shift(paraproduct(Signature(0, 1, 0), b, f, root, min_scale), root, min_scale) -
               paraproduct(Signature(0, 0, 1), b, hf, root, min_scale) +
               haar_shift(paraproduct(Signature(0, 0, 1), b, f, root, min_scale), root, min_scale);
    };
    {
        const StepFunction h_root = haar_h(root);
        const StepFunction r5 = residual_after_four(h_root, h_root);
        cal.tilde_left = inner_product(r5, haar_h(root.left_child()));
        cal.tilde_right = inner_product(r5, haar_h(root.right_child()));
    }

    // cross-check on deeper and mixed basis pairs
    for (int level = 0; level <= 2; ++level) {
        for (std::int64_t j = 0; j < (std::int64_t{1} << level); ++j) {
            const DyadicInterval parent{-level, j};
            for (const DyadicInterval& other :
                 {parent, parent.left_child(), parent.right_child()}) {
                const StepFunction b = haar_h(parent);
                const StepFunction f = haar_h(other);
                const StepFunction r5 = residual_after_four(b, f);
                const StepFunction predicted = tilde_paraproduct(
                    b, f, root, min_scale, {cal.tilde_left, cal.tilde_right});
                cal.max_deviation =
                    std::max(cal.max_deviation, (r5 - predicted).sup_norm());
            }
        }
    }
    return cal;
}

} // namespace dyad
