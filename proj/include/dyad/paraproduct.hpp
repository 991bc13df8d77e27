#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "dyad/expansion.hpp"
#include "dyad/haar.hpp"
#include "dyad/interval.hpp"
#include "dyad/step_function.hpp"

namespace dyad {

/// Paraproduct signature (eps1, eps2, eps3); a 1 puts the mean letter h^1 in
/// that slot, a 0 the oscillation letter h^0.
struct Signature {
    int e1 = 0, e2 = 0, e3 = 0;

    Signature(int a, int b, int c) : e1(a), e2(b), e3(c) {
        auto ok = [](int v) { return v == 0 || v == 1; };
        if (!ok(a) || !ok(b) || !ok(c))
            throw std::invalid_argument("Signature: components must be 0 or 1");
    }

    int ones() const { return e1 + e2 + e3; }
};

/// Interval averages of the expanded function on every window node
/// (levels 0..depth-1), from one downward sweep.
inline std::vector<std::vector<double>> node_averages(const HaarExpansion& e) {
    const int d = e.depth();
    const int r = e.root().scale;
    std::vector<std::vector<double>> avg(static_cast<std::size_t>(d));
    avg[0] = {e.mean() * inv_sqrt_length(r)};
    for (int l = 0; l + 1 < d; ++l) {
        const auto& c = e.levels()[static_cast<std::size_t>(l)];
        const double norm = inv_sqrt_length(r - l);
        auto& next = avg[static_cast<std::size_t>(l + 1)];
        next.resize(c.size() * 2);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[2 * i] = avg[static_cast<std::size_t>(l)][i] - c[i] * norm;
            next[2 * i + 1] = avg[static_cast<std::size_t>(l)][i] + c[i] * norm;
        }
    }
    return avg;
}

/// P^{e1,e2,e3}(f1, f2) = sum over window intervals I of
///   (<f1, h_I^{e1}> / sqrt|I|) <f2, h_I^{e2}> h_I^{e3},
/// summed over I inside `root` with scale >= min_scale.
inline StepFunction paraproduct(const Signature& sig, const StepFunction& f1,
                                const StepFunction& f2, const DyadicInterval& root,
                                int min_scale) {
    const HaarExpansion e1 = analyze(f1, root, min_scale);
    const HaarExpansion e2 = analyze(f2, root, min_scale);
    const int d = e1.depth();
    const int r = root.scale;

    std::vector<std::vector<double>> avg1, avg2;
    if (sig.e1 == 1) avg1 = node_averages(e1);
    if (sig.e2 == 1) avg2 = node_averages(e2);

    std::vector<std::vector<double>> w(static_cast<std::size_t>(d));
    for (int l = 0; l < d; ++l) {
        const auto& c1 = e1.levels()[static_cast<std::size_t>(l)];
        const auto& c2 = e2.levels()[static_cast<std::size_t>(l)];
        const double inv_norm = inv_sqrt_length(r - l);
        const double norm = sqrt_length(r - l);
        auto& wl = w[static_cast<std::size_t>(l)];
        wl.resize(c1.size());
        for (std::size_t i = 0; i < c1.size(); ++i) {
            const double a = sig.e1 == 0 ? c1[i] * inv_norm : avg1[static_cast<std::size_t>(l)][i];
            const double b = sig.e2 == 0 ? c2[i] : avg2[static_cast<std::size_t>(l)][i] * norm;
            wl[i] = a * b;
        }
    }

    if (sig.e3 == 0) {
        HaarExpansion out(root, root.scale - d + 1);
        out.levels() = std::move(w);
        return synthesize(out);
    }
    // e3 == 1: accumulate the constant contributions w_I / sqrt|I| on I
    std::vector<double> cur{w[0][0] * inv_sqrt_length(r)};
    for (int l = 1; l < d; ++l) {
        const auto& wl = w[static_cast<std::size_t>(l)];
        const double norm = inv_sqrt_length(r - l);
        std::vector<double> next(wl.size());
        for (std::size_t i = 0; i < wl.size(); ++i) next[i] = cur[i / 2] + wl[i] * norm;
        cur = std::move(next);
    }
    const double x0 = root.left();
    const int cell_scale = r - (d - 1);
    std::vector<double> xs(cur.size() + 1);
    for (std::size_t i = 0; i <= cur.size(); ++i)
        xs[i] = x0 + std::ldexp(static_cast<double>(i), cell_scale);
    return StepFunction(std::move(xs), std::move(cur));
}

/// Relative weights of the two child Haar letters in the degenerate
/// signature-(0,0,0) paraproduct.  The default is the uncalibrated printed
/// form (both +1); the shift module supplies the calibrated values.
struct TildeCoefficients {
    double left = 1.0;
    double right = 1.0;
};

/// sum over window I of (<b,h_I>/sqrt|I|) <f,h_I> (cl h_{I_left} + cr h_{I_right}).
inline StepFunction tilde_paraproduct(const StepFunction& b, const StepFunction& f,
                                      const DyadicInterval& root, int min_scale,
                                      const TildeCoefficients& tc = {}) {
    const HaarExpansion eb = analyze(b, root, min_scale);
    const HaarExpansion ef = analyze(f, root, min_scale);
    const int d = eb.depth();
    const int r = root.scale;

    HaarExpansion out(root, min_scale - 1);
    for (int l = 0; l < d; ++l) {
        const auto& cb = eb.levels()[static_cast<std::size_t>(l)];
        const auto& cf = ef.levels()[static_cast<std::size_t>(l)];
        const double inv_norm = inv_sqrt_length(r - l);
        auto& child = out.levels()[static_cast<std::size_t>(l + 1)];
        for (std::size_t i = 0; i < cb.size(); ++i) {
            const double w = cb[i] * inv_norm * cf[i];
            child[2 * i] += w * tc.left;
            child[2 * i + 1] += w * tc.right;
        }
    }
    return synthesize(out);
}

inline double mean_value(const StepFunction& f, const DyadicInterval& root) {
    return f.integral() / root.length();
}

inline bool is_mean_zero(const StepFunction& f, double tol = 1e-9) {
    return std::abs(f.integral()) <= tol * std::max(1.0, f.lp_norm(2.0));
}

inline bool is_cell_resolved(const StepFunction& f, int min_scale) {
    for (double x : f.breakpoints()) {
        const double t = std::ldexp(x, -min_scale);
        if (std::abs(t - std::nearbyint(t)) > 1e-9 * std::max(1.0, std::abs(t))) return false;
    }
    return true;
}

struct ProductDecomposition {
    StepFunction p100, p001, p010;
    double residual = 0.0;
};

/// Exact splitting f1*f2 = P^{1,0,0} + P^{0,0,1} + P^{0,1,0} for mean-zero
/// inputs resolved on the width-2^{min_scale} cells of the root.
inline ProductDecomposition product_decomposition(const StepFunction& f1, const StepFunction& f2,
                                                  const DyadicInterval& root, int min_scale) {
    if (!is_mean_zero(f1) || !is_mean_zero(f2))
        throw std::domain_error("product_decomposition: inputs must have zero mean on the root");
    if (!is_cell_resolved(f1, min_scale) || !is_cell_resolved(f2, min_scale))
        throw std::domain_error("product_decomposition: inputs must be cell-resolved at min_scale");
    ProductDecomposition out;
    out.p100 = paraproduct(Signature(1, 0, 0), f1, f2, root, min_scale);
    out.p001 = paraproduct(Signature(0, 0, 1), f1, f2, root, min_scale);
    out.p010 = paraproduct(Signature(0, 1, 0), f1, f2, root, min_scale);
    out.residual = (f1 * f2 - out.p100 - out.p001 - out.p010).sup_norm();
    return out;
}

struct ProductDecompositionGeneral {
    StepFunction p100, p001, p010; // paraproducts of the mean-free parts
    StepFunction correction;       // mean(f1) f2 + mean(f2) f1 - mean(f1)mean(f2) 1_root
    double residual = 0.0;
};

/// Uncertified variant for inputs with nonzero mean: the identity holds with
/// the analytic correction term added back.
inline ProductDecompositionGeneral product_decomposition_general(const StepFunction& f1,
                                                                 const StepFunction& f2,
                                                                 const DyadicInterval& root,
                                                                 int min_scale) {
    require_support_inside(f1, root, "product_decomposition_general");
    require_support_inside(f2, root, "product_decomposition_general");
    const double m1 = mean_value(f1, root);
    const double m2 = mean_value(f2, root);
    const StepFunction one = StepFunction::indicator(root.left(), root.right());
    const StepFunction g1 = f1 - m1 * one;
    const StepFunction g2 = f2 - m2 * one;
    ProductDecompositionGeneral out;
    out.p100 = paraproduct(Signature(1, 0, 0), g1, g2, root, min_scale);
    out.p001 = paraproduct(Signature(0, 0, 1), g1, g2, root, min_scale);
    out.p010 = paraproduct(Signature(0, 1, 0), g1, g2, root, min_scale);
    out.correction = m1 * f2 + m2 * f1 - (m1 * m2) * one;
    out.residual =
        (f1 * f2 - out.p100 - out.p001 - out.p010 - out.correction).sup_norm();
    return out;
}

} // namespace dyad
