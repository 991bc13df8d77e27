#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "dyad/carleson.hpp"
#include "dyad/expansion.hpp"
#include "dyad/haar.hpp"
#include "dyad/operator_norm.hpp"
#include "dyad/paraproduct.hpp"
#include "dyad/random.hpp"

namespace dyad {

struct EmbeddingReport {
    double p = 2.0;
    double op_norm_estimate = 0.0;
    bool op_converged = false;
    int iterations = 0;
    double testing_sup = 0.0;
    double bmo = 0.0;
};

/// Operator-norm / testing-supremum / BMO comparison for the paraproduct
/// f -> P^{0,1,0}(b, f).  The p = 2 path is the certified one: the power
/// iteration is seeded with the maximizing normalized indicator, so
/// op_norm_estimate >= testing_sup up to rounding, and testing_sup >= bmo
/// exactly (the inside-J block of the testing function alone gives the BMO
/// candidate).  Other p are reported empirically via the function route.
inline EmbeddingReport embedding_report(const StepFunction& b, double p,
                                        const DyadicInterval& root, int min_scale,
                                        int power_iters, std::uint64_t seed = 1) {
    EmbeddingReport rep;
    rep.p = p;
    const HaarExpansion eb = analyze(b, root, min_scale);
    rep.bmo = bmo_norm(eb);

    if (p == 2.0) {
        const EmbeddingTesting testing = embedding_testing(eb);
        rep.testing_sup = testing.sup;
        EmbeddingOperator op(eb);
        CellVector start;
        start.width = op.cell_width();
        start.values = synthesize_cells(analyze(haar_indicator(testing.argmax), root, min_scale),
                                        op.cell_levels());
        const OperatorNormEstimate est = estimate_operator_norm(
            [&](const CellVector& v) { return op.apply(v); },
            [&](const CellVector& v) { return op.apply_adjoint(v); }, start, seed, power_iters);
        rep.op_norm_estimate = est.value;
        rep.op_converged = est.converged;
        rep.iterations = est.iterations;
        return rep;
    }

    // empirical path for p != 2
    double sup = 0.0;
    const int d = eb.depth();
    for (int l = 0; l < d; ++l) {
        for (std::int64_t j = 0; j < (std::int64_t{1} << l); ++j) {
            const DyadicInterval J = eb.interval_at(l, j);
            const StepFunction test = StepFunction::indicator(
                J.left(), J.right(), std::pow(J.length(), -1.0 / p));
            sup = std::max(sup, paraproduct(Signature(0, 1, 0), b, test, root, min_scale).lp_norm(p));
        }
    }
    rep.testing_sup = sup;
    RandomStream rng(seed);
    double ratio_sup = 0.0;
    for (int m = 0; m < std::max(1, power_iters); ++m) {
        const StepFunction f = random_step_function(root, d, true, rng);
        const double denom = f.lp_norm(p);
        if (denom < 1e-12) continue;
        ratio_sup = std::max(
            ratio_sup, paraproduct(Signature(0, 1, 0), b, f, root, min_scale).lp_norm(p) / denom);
    }
    rep.op_norm_estimate = std::max(ratio_sup, sup);
    rep.op_converged = false; // no certificate away from p = 2
    return rep;
}

struct CommutatorNormReport {
    double comm_norm_estimate = 0.0;
    bool converged = false;
    int iterations = 0;
    double bmo = 0.0;
    double ratio = 0.0;
};

/// Power-iteration estimate of ||[b, H]||_{2->2} on the window against the
/// dyadic BMO norm of b.
inline CommutatorNormReport commutator_norm_vs_bmo(const StepFunction& b,
                                                   const DyadicInterval& root, int min_scale,
                                                   int power_iters, std::uint64_t seed = 1) {
    CommutatorNormReport rep;
    const HaarExpansion eb = analyze(b, root, min_scale);
    rep.bmo = bmo_norm(eb);
    ShiftCommutatorOperator op(eb);
    RandomStream rng(splitmix64(seed));
    CellVector start = random_cell_vector(std::size_t{1} << op.input_levels(),
                                          op.input_width(), rng);
    const OperatorNormEstimate est = estimate_operator_norm(
        [&](const CellVector& v) { return op.apply(v); },
        [&](const CellVector& v) { return op.apply_adjoint(v); }, start, seed, power_iters);
    rep.comm_norm_estimate = est.value;
    rep.converged = est.converged;
    rep.iterations = est.iterations;
    rep.ratio = rep.bmo > 0.0 ? rep.comm_norm_estimate / rep.bmo : 0.0;
    return rep;
}

struct HolderReport {
    int e1 = 0, e2 = 0, e3 = 0;
    double p1 = 0.0, p2 = 0.0, q = 0.0;
    int ensemble = 0;
    int depth = 0;
    std::uint64_t seed = 0;
    std::size_t skipped = 0;
    double max_ratio = 0.0;
    std::array<double, 5> quantiles{}; // min, q25, median, q75, max
};

/// Empirical Holder constants ||P(f1,f2)||_q / (||f1||_{p1} ||f2||_{p2})
/// over a seeded ensemble of random pairs.  Signatures with more than one
/// mean letter carry no boundedness claim and are rejected here.
inline HolderReport holder_estimate(const Signature& sig, double p1, double p2,
                                    int ensemble_size, int depth, std::uint64_t seed) {
    if (sig.ones() > 1)
        throw std::invalid_argument("holder_estimate: at most one mean letter allowed");
    if (!(p1 > 1.0) || !(p2 > 1.0))
        throw std::invalid_argument("holder_estimate: exponents must lie in (1, inf)");
    HolderReport rep;
    rep.e1 = sig.e1;
    rep.e2 = sig.e2;
    rep.e3 = sig.e3;
    rep.p1 = p1;
    rep.p2 = p2;
    rep.q = 1.0 / (1.0 / p1 + 1.0 / p2);
    rep.ensemble = ensemble_size;
    rep.depth = depth;
    rep.seed = seed;

    const DyadicInterval root = DyadicInterval::unit();
    const int min_scale = -depth;
    std::vector<double> ratios;
    ratios.reserve(static_cast<std::size_t>(ensemble_size));
    for (int m = 0; m < ensemble_size; ++m) {
        RandomStream rng = RandomStream::for_member(seed, static_cast<std::uint64_t>(m));
        const StepFunction f1 = random_step_function(root, depth, true, rng);
        const StepFunction f2 = random_step_function(root, depth, true, rng);
        const double denom = f1.lp_norm(p1) * f2.lp_norm(p2);
        if (denom < 1e-12) {
            ++rep.skipped;
            continue;
        }
        ratios.push_back(paraproduct(sig, f1, f2, root, min_scale).lp_norm(rep.q) / denom);
    }
    if (!ratios.empty()) {
        std::sort(ratios.begin(), ratios.end());
        rep.max_ratio = ratios.back();
        auto q = [&](double t) {
            const double pos = t * static_cast<double>(ratios.size() - 1);
            return ratios[static_cast<std::size_t>(std::llround(pos))];
        };
        rep.quantiles = {ratios.front(), q(0.25), q(0.5), q(0.75), ratios.back()};
    }
    return rep;
}

} // namespace dyad
