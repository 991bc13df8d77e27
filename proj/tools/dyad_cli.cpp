// dyad: command-line driver for the dyadic harmonic analysis library.
//
// Subcommands wire the library into reproducible batch experiments:
//   verify        exact-identity suites with pass/fail per identity
//   norms         operator-norm vs BMO ensembles and Holder constants
//   shift-average translation/dilation averaging of the Haar shift
//   hankel        Hankel norms, lower bounds and extremal-symbol estimates
//
// Every report embeds its configuration and seed; reruns with the same
// configuration are byte-identical.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dyad/averaging.hpp"
#include "dyad/carleson.hpp"
#include "dyad/expansion.hpp"
#include "dyad/hankel.hpp"
#include "dyad/hilbert.hpp"
#include "dyad/io.hpp"
#include "dyad/maximal.hpp"
#include "dyad/norms.hpp"
#include "dyad/operator_norm.hpp"
#include "dyad/paraproduct.hpp"
#include "dyad/random.hpp"
#include "dyad/shift.hpp"
#include "dyad/spectral.hpp"
#include "dyad/step_function.hpp"

namespace {

using namespace dyad;

const DyadicInterval kUnit = DyadicInterval::unit();

struct Options {
    int depth = 6;
    std::uint64_t seed = 1;
    int ensemble = 200;
    double translation_range = 1024.0;
    int samples_y = 256;
    int samples_lambda = 256;
    std::string scales = "-8:12";
    std::string out;
    std::string format = "json";
};

std::pair<int, int> parse_scales(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--scales", "expected the form a:b");
    try {
        const int a = std::stoi(text.substr(0, colon));
        const int b = std::stoi(text.substr(colon + 1));
        if (a > b) throw CLI::ValidationError("--scales", "needs a <= b");
        return {a, b};
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--scales", "expected integers a:b");
    }
}

StepFunction random_mean_zero(int depth, RandomStream& rng) {
    if (depth == 0) return {};
    return random_step_function(kUnit, depth, false, rng);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << text;
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json config_json(const Options& opt, const char* command) {
    return Json{{"command", command},
                {"depth", opt.depth},
                {"seed", opt.seed},
                {"ensemble", opt.ensemble},
                {"Y", opt.translation_range},
                {"samples_y", opt.samples_y},
                {"samples_lambda", opt.samples_lambda},
                {"scales", opt.scales},
                {"format", opt.format}};
}

// ---------------------------------------------------------------- verify --

struct Check {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass() const { return residual <= tolerance; }
};

std::vector<Check> run_verify_checks(int depth, std::uint64_t seed) {
    std::vector<Check> checks;
    const int min_scale = -depth;
    const int basis_scale = -std::max(depth - 1, 0);

    { // orthonormality of the window Haar system
        std::vector<StepFunction> sys{haar_indicator(kUnit)};
        for (int scale = 0; scale >= basis_scale; --scale)
            for (std::int64_t j = 0; j < (std::int64_t{1} << -scale); ++j)
                sys.push_back(haar_h({scale, j}));
        double dev = 0.0;
        for (std::size_t a = 0; a < sys.size(); ++a)
            for (std::size_t b = a; b < sys.size(); ++b)
                dev = std::max(dev, std::abs(inner_product(sys[a], sys[b]) - (a == b ? 1.0 : 0.0)));
        checks.push_back({"haar_orthonormality", dev, 1e-12});
    }

    double round_trip = 0.0, parseval = 0.0;
    for (int m = 0; m < 20; ++m) {
        RandomStream rng = RandomStream::for_member(seed, static_cast<std::uint64_t>(m));
        if (depth == 0) break;
        const HaarExpansion e = random_expansion(kUnit, depth, true, rng);
        const StepFunction f = synthesize(e);
        round_trip = std::max(round_trip, sup_distance(synthesize(analyze(f, kUnit, e.min_scale())), f));
        const double l2 = f.lp_norm(2.0);
        parseval = std::max(parseval, std::abs(l2 * l2 - e.parseval_energy()));
    }
    checks.push_back({"analysis_round_trip", round_trip, 1e-12});
    checks.push_back({"parseval", parseval, 1e-12});

    { // interval averages from coefficients above
        double dev = 0.0;
        RandomStream rng = RandomStream::for_member(seed, 101);
        const StepFunction f = random_mean_zero(depth, rng);
        if (!f.is_zero()) {
            const HaarExpansion e = analyze(f, kUnit, min_scale);
            for (int level = 1; level <= depth; ++level)
                for (std::int64_t j = 0; j < (std::int64_t{1} << level); ++j) {
                    const DyadicInterval i{-level, j};
                    const double direct = f.integral_over(i.left(), i.right()) / i.length();
                    const double via =
                        inner_product(f, haar_indicator(i)) * inv_sqrt_length(i.scale);
                    double sum = 0.0;
                    for (DyadicInterval p = i.parent();; p = p.parent()) {
                        sum += e.coeff(p) * haar_eval(p, HaarKind::H0, i.center());
                        if (p == kUnit) break;
                    }
                    dev = std::max({dev, std::abs(direct - via), std::abs(direct - sum)});
                }
        }
        checks.push_back({"average_from_coefficients", dev, 1e-12});
    }

    { // product identity and paraproduct duality
        double residual = 0.0, duality = 0.0;
        for (int m = 0; m < 25; ++m) {
            RandomStream rng = RandomStream::for_member(seed, 200 + static_cast<std::uint64_t>(m));
            const StepFunction f1 = random_mean_zero(depth, rng);
            const StepFunction f2 = random_mean_zero(depth, rng);
            if (!f1.is_zero() || !f2.is_zero())
                residual = std::max(residual,
                                    product_decomposition(f1, f2, kUnit, min_scale).residual);
            const StepFunction g = depth == 0 ? StepFunction::indicator(0.0, 1.0)
                                              : random_step_function(kUnit, depth, true, rng);
            const double lhs =
                inner_product(paraproduct(Signature(0, 1, 0), f1, f2, kUnit, min_scale), g);
            const double rhs =
                inner_product(f2, paraproduct(Signature(0, 0, 1), f1, g, kUnit, min_scale));
            duality = std::max(duality, std::abs(lhs - rhs));
        }
        checks.push_back({"product_identity", residual, 1e-10});
        checks.push_back({"paraproduct_duality", duality, 1e-12});
    }

    { // shift calibration and the parent/sign coefficient identity
        const ShiftCalibration cal = calibrate_shift();
        const double frozen =
            std::max({std::abs(cal.kappa - kShiftKappa),
                      std::abs(cal.tilde_left - calibrated_tilde_coefficients().left),
                      std::abs(cal.tilde_right - calibrated_tilde_coefficients().right)});
        checks.push_back({"shift_calibration", std::max(frozen, cal.max_deviation), 1e-12});

        double coeff_dev = 0.0, contraction = 0.0;
        RandomStream rng = RandomStream::for_member(seed, 300);
        const StepFunction f = depth == 0 ? StepFunction::indicator(0.0, 1.0)
                                          : random_step_function(kUnit, depth, true, rng);
        const StepFunction sf = haar_shift(f, kUnit, min_scale);
        const HaarExpansion ef = analyze(f, kUnit, min_scale);
        const HaarExpansion esf = analyze(sf, kUnit, min_scale - 1);
        ef.for_each([&](const DyadicInterval& i, double) {
            if (i == kUnit) return;
            const double want = kShiftKappa * i.sign() * ef.coeff(i.parent());
            coeff_dev = std::max(coeff_dev, std::abs(esf.coeff(i) - want));
        });
        contraction = std::max(0.0, sf.lp_norm(2.0) - f.lp_norm(2.0));
        checks.push_back({"shift_coefficient_identity", coeff_dev, 1e-12});
        checks.push_back({"shift_l2_contraction", contraction, 1e-12});
    }

    { // five-term commutator decomposition
        double residual = 0.0;
        for (int m = 0; m < 25; ++m) {
            RandomStream rng = RandomStream::for_member(seed, 400 + static_cast<std::uint64_t>(m));
            const StepFunction b = random_mean_zero(depth, rng);
            const StepFunction f = random_mean_zero(depth, rng);
            residual = std::max(residual, commutator_decomposed(b, f, kUnit, min_scale).residual);
        }
        checks.push_back({"commutator_decomposition", residual, 1e-10});
    }

    { // two-scale indicator identity
        double dev = 0.0;
        for (int level = 1; level <= std::max(depth, 1); ++level)
            for (std::int64_t j = 0; j < (std::int64_t{1} << level); ++j) {
                const DyadicInterval i{-level, j};
                const StepFunction lhs =
                    std::numbers::sqrt2 * haar_indicator(i) - haar_indicator(i.parent());
                const StepFunction rhs = static_cast<double>(-i.sign()) * haar_h(i.parent());
                dev = std::max(dev, sup_distance(lhs, rhs));
            }
        checks.push_back({"two_scale_indicator_identity", dev, 1e-12});
    }

    { // spectral model: projections, involution, commutator-Hankel identity
        RandomStream rng = RandomStream::for_member(seed, 500);
        double algebra = 0.0, hankel_identity = 0.0, blocks = 0.0;
        for (int m = 0; m < 500; ++m) {
            const SpectralPolynomial b = random_spectral(8, rng);
            const SpectralPolynomial f = random_spectral(8, rng);
            algebra = std::max({algebra,
                                (proj_plus(f) + proj_minus(f) - f).l2_norm(),
                                (proj_plus(proj_minus(f))).l2_norm(),
                                (hilbert_alg(hilbert_alg(f)) - f).l2_norm()});
            hankel_identity = std::max(hankel_identity, commutator_identity_check(b, f, 16));
            const SpectralPolynomial pf = proj_minus(f);
            const SpectralPolynomial comm = b * hilbert_alg(pf) - hilbert_alg(b * pf);
            blocks = std::max(
                {blocks,
                 (proj_plus(comm) - Complex{-2.0, 0.0} * proj_plus(b * pf)).l2_norm(),
                 proj_minus(comm).l2_norm()});
        }
        checks.push_back({"spectral_projection_algebra", algebra, 1e-12});
        checks.push_back({"commutator_hankel_identity", hankel_identity, 1e-12});
        checks.push_back({"hankel_block_computations", blocks, 1e-12});
    }

    { // gamma0 node values and oddness
        const PiecewiseLinear g0 = gamma0();
        double dev = std::abs(g0.eval(1.0)) + std::abs(g0.eval(-1.0)) + std::abs(g0.eval(0.0));
        dev = std::max(dev, std::abs(std::abs(g0.eval(0.5)) - 0.5));
        dev = std::max(dev, std::abs(std::abs(g0.eval(0.75)) - 0.25));
        for (int i = 0; i <= 1000; ++i) {
            const double y = i / 1000.0;
            dev = std::max(dev, std::abs(g0.eval(y) + g0.eval(-y)));
        }
        checks.push_back({"gamma0_kernel", dev, 1e-12});
    }

    return checks;
}

int cmd_verify(const Options& opt) {
    const std::vector<Check> checks = run_verify_checks(opt.depth, opt.seed);
    bool all_pass = true;
    Json rows = Json::array();
    for (const Check& c : checks) {
        all_pass = all_pass && c.pass();
        rows.push_back(Json{{"identity", c.name},
                            {"residual", c.residual},
                            {"tolerance", c.tolerance},
                            {"pass", c.pass()}});
    }
    const ShiftCalibration cal = calibrate_shift();
    Json report{{"schema", 1},
                {"config", config_json(opt, "verify")},
                {"calibration", to_json(cal)},
                {"checks", rows},
                {"all_pass", all_pass}};
    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "identity,residual,tolerance,pass\n";
        for (const Check& c : checks)
            csv << c.name << ',' << csv_number(c.residual) << ',' << csv_number(c.tolerance)
                << ',' << (c.pass() ? 1 : 0) << '\n';
        write_text(opt.out, csv.str());
    } else {
        write_text(opt.out, report.dump(2) + "\n");
    }
    return all_pass ? 0 : 1;
}

// ----------------------------------------------------------------- norms --

Json quantile_json(std::vector<double> v) {
    if (v.empty()) return Json::array();
    std::sort(v.begin(), v.end());
    auto q = [&](double t) {
        return v[static_cast<std::size_t>(std::llround(t * static_cast<double>(v.size() - 1)))];
    };
    return Json::array({v.front(), q(0.25), q(0.5), q(0.75), v.back()});
}

int cmd_norms(const Options& opt) {
    const int min_scale = -opt.depth;
    const int power_iters = 400;
    bool certified_ok = true;

    std::vector<double> embed_ratios, comm_ratios;
    double worst_testing_margin = 0.0; // max of bmo - testing_sup (should stay <= 1e-10)
    double worst_chain_margin = 0.0;   // max of testing_sup - op_norm_estimate
    int non_converged = 0;
    for (int m = 0; m < opt.ensemble; ++m) {
        RandomStream rng = RandomStream::for_member(opt.seed, static_cast<std::uint64_t>(m));
        const StepFunction b = random_mean_zero(opt.depth, rng);
        const EmbeddingReport er =
            embedding_report(b, 2.0, kUnit, min_scale, power_iters, opt.seed + static_cast<std::uint64_t>(m));
        worst_testing_margin = std::max(worst_testing_margin, er.bmo - er.testing_sup);
        worst_chain_margin = std::max(worst_chain_margin, er.testing_sup - er.op_norm_estimate);
        if (!er.op_converged) ++non_converged;
        if (er.bmo > 1e-12) embed_ratios.push_back(er.op_norm_estimate / er.bmo);

        const CommutatorNormReport cr = commutator_norm_vs_bmo(
            b, kUnit, min_scale, power_iters, opt.seed + static_cast<std::uint64_t>(m));
        if (cr.bmo > 1e-12) comm_ratios.push_back(cr.ratio);
    }
    certified_ok = certified_ok && worst_testing_margin <= 1e-10 && worst_chain_margin <= 1e-7;

    const HolderReport holder10 =
        holder_estimate(Signature(0, 1, 0), 4.0, 4.0, opt.ensemble, std::max(opt.depth, 1), opt.seed);
    const HolderReport holder01 =
        holder_estimate(Signature(0, 0, 1), 4.0, 4.0, opt.ensemble, std::max(opt.depth, 1), opt.seed);

    const EmbeddingReport unit_haar = embedding_report(haar_h(kUnit), 2.0, kUnit,
                                                       std::min(min_scale, -1), power_iters, opt.seed);

    auto band = [](const std::vector<double>& v) {
        Json j;
        if (v.empty()) return Json{{"count", 0}};
        double lo = v[0], hi = v[0];
        for (double x : v) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        return Json{{"count", v.size()}, {"low", lo}, {"high", hi}};
    };

    Json report{{"schema", 1},
                {"config", config_json(opt, "norms")},
                {"embedding",
                 Json{{"ratio_band", band(embed_ratios)},
                      {"ratio_quantiles", quantile_json(embed_ratios)},
                      {"worst_bmo_minus_testing", worst_testing_margin},
                      {"worst_testing_minus_opnorm", worst_chain_margin},
                      {"non_converged", non_converged}}},
                {"commutator", Json{{"ratio_band", band(comm_ratios)},
                                    {"ratio_quantiles", quantile_json(comm_ratios)}}},
                {"holder_010", to_json(holder10)},
                {"holder_001", to_json(holder01)},
                {"unit_haar_symbol", to_json(unit_haar)},
                {"certified_ok", certified_ok}};
    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "metric,value\n";
        csv << "embedding_ratio_median," << csv_number(quantile_json(embed_ratios)[2].get<double>())
            << "\ncommutator_ratio_median,"
            << csv_number(quantile_json(comm_ratios)[2].get<double>()) << "\nholder_010_max,"
            << csv_number(holder10.max_ratio) << "\ncertified_ok," << (certified_ok ? 1 : 0)
            << '\n';
        write_text(opt.out, csv.str());
    } else {
        write_text(opt.out, report.dump(2) + "\n");
    }
    return certified_ok ? 0 : 1;
}

// --------------------------------------------------------- shift-average --

std::vector<StepFunction> builtin_test_functions() {
    return {StepFunction::indicator(0.0, 1.0),
            StepFunction({-1.0, -0.5, 0.0, 0.5, 1.0}, {0.5, 1.0, 1.0, 0.5}),
            StepFunction({0.0, 0.25, 0.75, 1.5}, {0.75, 1.25, 0.5})};
}

int cmd_shift_average(const Options& opt) {
    const auto [scale_min, scale_max] = parse_scales(opt.scales);
    AveragingConfig cfg;
    cfg.translation_range = opt.translation_range;
    cfg.samples_y = opt.samples_y;
    cfg.samples_lambda = opt.samples_lambda;
    cfg.scale_min = scale_min;
    cfg.scale_max = scale_max;
    cfg.seed = opt.seed;
    cfg.validate();

    const std::vector<StepFunction> fs = builtin_test_functions();
    const std::vector<ShiftSample> samples = draw_samples(cfg);

    std::ostringstream csv;
    csv << "series,x,averaged,exact\n";
    const PiecewiseLinear g0 = gamma0();
    for (int i = -1000; i <= 1000; ++i) {
        const double x = i / 1000.0;
        csv << "gamma0," << csv_number(x) << ',' << csv_number(g0.eval(x)) << ",\n";
    }
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const std::vector<double> grid = comparison_grid(fs[k], cfg, -3.0, 4.0, 512);
        const std::vector<double> averaged = averaged_shift_values(fs[k], samples, cfg, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            csv << 'f' << (k + 1) << ',' << csv_number(grid[i]) << ','
                << csv_number(averaged[i]) << ',' << csv_number(hilbert_pv(fs[k], grid[i]))
                << '\n';
    }

    const FitResult fit = fit_constant(fs, cfg, -3.0, 4.0, 512);
    Json summary{{"schema", 1},
                 {"config", config_json(opt, "shift-average")},
                 {"fit", to_json(fit)},
                 {"gamma0_nodes", Json{{"x", gamma0().nodes()}, {"value", gamma0().values()}}}};

    if (opt.out.empty())
        throw CLI::ValidationError("--out", "shift-average writes <out>.csv and <out>.json");
    write_text(opt.out + ".csv", csv.str());
    write_text(opt.out + ".json", summary.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------- hankel --

int cmd_hankel(const Options& opt) {
    const int band = opt.depth;
    const int budget = std::max(16, 2 * band);
    const int iterations = 600;
    bool sandwich_ok = true;

    Json rows = Json::array();
    auto add_row = [&](const std::string& label, const SpectralPolynomial& b) {
        const NehariReport nr = nehari_inf_estimate(b, budget, iterations, opt.seed);
        const double lower = nehari_lower_bound(b, 2000, opt.seed);
        const bool ok = lower <= nr.sigma0 + 1e-10 && nr.sigma0 <= nr.inf_estimate + 1e-6;
        sandwich_ok = sandwich_ok && ok;
        Json row = to_json(nr);
        row["label"] = label;
        row["lower_bound"] = lower;
        row["sandwich_ok"] = ok;
        rows.push_back(row);
    };

    add_row("mode_1", SpectralPolynomial::mode(1));
    {
        SpectralPolynomial anti(2);
        anti.set(-1, Complex{1.0, -0.5});
        anti.set(-2, Complex{0.25, 0.75});
        add_row("anti_analytic", anti);
    }
    RandomStream rng(opt.seed);
    std::vector<double> gaps;
    for (int m = 0; m < opt.ensemble; ++m) {
        RandomStream member = RandomStream::for_member(opt.seed, static_cast<std::uint64_t>(m));
        const SpectralPolynomial b = random_spectral(band, member);
        add_row("random_" + std::to_string(m), b);
        const Json& row = rows.back();
        gaps.push_back(row["gap"].get<double>() /
                       std::max(row["sigma0"].get<double>(), 1e-12));
    }

    Json report{{"schema", 1},
                {"config", config_json(opt, "hankel")},
                {"band", band},
                {"budget", budget},
                {"symbols", rows},
                {"relative_gap_quantiles", quantile_json(gaps)},
                {"sandwich_ok", sandwich_ok}};
    if (opt.format == "csv") {
        std::ostringstream csv;
        csv << "label,sigma0,lower_bound,inf_estimate,gap,sandwich_ok\n";
        for (const Json& row : rows)
            csv << row["label"].get<std::string>() << ','
                << csv_number(row["sigma0"].get<double>()) << ','
                << csv_number(row["lower_bound"].get<double>()) << ','
                << csv_number(row["inf_estimate"].get<double>()) << ','
                << csv_number(row["gap"].get<double>()) << ','
                << (row["sandwich_ok"].get<bool>() ? 1 : 0) << '\n';
        write_text(opt.out, csv.str());
    } else {
        write_text(opt.out, report.dump(2) + "\n");
    }
    return sandwich_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dyad: dyadic Haar analysis, shift averaging and Hankel experiments"};
    app.require_subcommand(1);

    Options opt;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--depth", opt.depth, "dyadic depth (hankel: symbol band)")
            ->check(CLI::Range(0, 24));
        cmd->add_option("--seed", opt.seed, "random seed echoed into the report");
        cmd->add_option("--ensemble", opt.ensemble, "ensemble size")->check(CLI::PositiveNumber);
        cmd->add_option("--Y", opt.translation_range, "translation averaging range")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--samples-y", opt.samples_y, "translation samples")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--samples-lambda", opt.samples_lambda, "dilation samples")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--scales", opt.scales, "shift scale window a:b");
        cmd->add_option("--out", opt.out, "output path (default stdout)");
        cmd->add_option("--format", opt.format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* verify = app.add_subcommand("verify", "run the exact-identity suites");
    CLI::App* norms = app.add_subcommand("norms", "operator norm / BMO ensembles");
    CLI::App* average = app.add_subcommand(
        "shift-average", "average the conjugated Haar shift against the Hilbert transform; "
                         "writes <out>.csv (series,x,averaged,exact; gamma0 rows leave exact "
                         "empty) and <out>.json");
    CLI::App* hankel = app.add_subcommand("hankel", "Hankel norm and Nehari estimates");
    for (CLI::App* cmd : {verify, norms, average, hankel}) add_common(cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(verify)) return cmd_verify(opt);
        if (app.got_subcommand(norms)) return cmd_norms(opt);
        if (app.got_subcommand(average)) return cmd_shift_average(opt);
        if (app.got_subcommand(hankel)) {
            if (hankel->count("--depth") == 0) opt.depth = 4; // band of the symbols
            return cmd_hankel(opt);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
