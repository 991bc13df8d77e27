#pragma once

// JSON views of the core value types and reports.  Pulled in only by code
// that serializes (the CLI and the acceptance suite); requires the vendored
// nlohmann/json single header on the include path.

#include <string>

#include <json.hpp>

#include "dyad/averaging.hpp"
#include "dyad/expansion.hpp"
#include "dyad/hankel.hpp"
#include "dyad/norms.hpp"
#include "dyad/shift.hpp"
#include "dyad/spectral.hpp"
#include "dyad/step_function.hpp"

namespace dyad {

using Json = nlohmann::ordered_json;

inline Json to_json(const StepFunction& f) {
    return Json{{"breakpoints", f.breakpoints()}, {"values", f.values()}};
}

inline StepFunction step_function_from_json(const Json& j) {
    return StepFunction(j.at("breakpoints").get<std::vector<double>>(),
                        j.at("values").get<std::vector<double>>());
}

/// Interval keys serialize as "scale:position".
inline Json to_json(const HaarExpansion& e) {
    Json coeffs = Json::object();
    e.for_each([&](const DyadicInterval& i, double c) { coeffs[i.key()] = c; });
    return Json{{"root", e.root().key()},
                {"min_scale", e.min_scale()},
                {"mean", e.mean()},
                {"coeffs", coeffs}};
}

/// Symbols serialize as arrays of (frequency, re, im).
inline Json to_json(const SpectralPolynomial& p) {
    Json arr = Json::array();
    for (int k = -p.band(); k <= p.band(); ++k) {
        const Complex c = p.coeff(k);
        if (c != Complex{}) arr.push_back(Json::array({k, c.real(), c.imag()}));
    }
    return arr;
}

inline SpectralPolynomial spectral_polynomial_from_json(const Json& j) {
    int band = 0;
    for (const Json& row : j) band = std::max(band, std::abs(row.at(0).get<int>()));
    SpectralPolynomial p(band);
    for (const Json& row : j)
        p.set(row.at(0).get<int>(),
              Complex{row.at(1).get<double>(), row.at(2).get<double>()});
    return p;
}

inline Json to_json(const ShiftCalibration& cal) {
    return Json{{"kappa", cal.kappa},
                {"tilde_left", cal.tilde_left},
                {"tilde_right", cal.tilde_right},
                {"max_deviation", cal.max_deviation}};
}

inline Json to_json(const EmbeddingReport& r) {
    return Json{{"p", r.p},
                {"op_norm_estimate", r.op_norm_estimate},
                {"op_converged", r.op_converged},
                {"iterations", r.iterations},
                {"testing_sup", r.testing_sup},
                {"bmo", r.bmo}};
}

inline Json to_json(const CommutatorNormReport& r) {
    return Json{{"comm_norm_estimate", r.comm_norm_estimate},
                {"converged", r.converged},
                {"iterations", r.iterations},
                {"bmo", r.bmo},
                {"ratio", r.ratio}};
}

inline Json to_json(const HolderReport& r) {
    return Json{{"signature", Json::array({r.e1, r.e2, r.e3})},
                {"p1", r.p1},
                {"p2", r.p2},
                {"q", r.q},
                {"ensemble", r.ensemble},
                {"depth", r.depth},
                {"seed", r.seed},
                {"skipped", r.skipped},
                {"max_ratio", r.max_ratio},
                {"quantiles", r.quantiles}};
}

inline Json to_json(const NehariReport& r) {
    return Json{{"sigma0", r.sigma0},
                {"inf_estimate", r.inf_estimate},
                {"gap", r.gap},
                {"iterations_used", r.iterations_used},
                {"converged", r.converged},
                {"norm_converged", r.norm_converged},
                {"budget", r.degree_budget},
                {"sample_points", r.sample_points},
                {"seed", r.seed}};
}

inline Json to_json(const FitResult& r) {
    return Json{{"c_hat", r.c_hat},
                {"cosine", r.cosine},
                {"dispersion", r.dispersion},
                {"degenerate", r.degenerate}};
}

} // namespace dyad
