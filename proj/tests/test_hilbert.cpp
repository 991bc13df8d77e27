#include <catch2/catch_amalgamated.hpp>

#include "dyad/hilbert.hpp"
#include "dyad/random.hpp"
#include "oracles.hpp"

using namespace dyad;

namespace {
const DyadicInterval kUnit = DyadicInterval::unit();
}

TEST_CASE("piecewise linear evaluation") {
    const PiecewiseLinear p({0.0, 1.0, 2.0}, {0.0, 2.0, 0.0});
    CHECK(p.eval(0.5) == 1.0);
    CHECK(p.eval(1.0) == 2.0);
    CHECK(p.eval(1.75) == 0.5);
    CHECK(p.eval(-0.1) == 0.0);
    CHECK(p.eval(2.1) == 0.0);
    const PiecewiseLinear r = p.refined({0.5, 1.5});
    CHECK(r.nodes().size() == 5);
    for (double x : {0.1, 0.5, 0.9, 1.3, 1.9}) CHECK(r.eval(x) == p.eval(x));
}

TEST_CASE("correlation against quadrature") {
    const StepFunction f({0.0, 0.5, 1.0}, {-1.0, 1.0});
    const StepFunction g({0.25, 0.75, 1.25}, {2.0, -0.5});
    const PiecewiseLinear c = correlate(f, g);
    for (double u = -1.6; u <= 1.6; u += 0.1) {
        const double direct = oracles::quadrature(
            [&](double a) { return f.eval(a) * g.eval(a - u); }, -1.0, 2.0, 30000);
        CHECK(c.eval(u) == Catch::Approx(direct).margin(1e-3));
    }
}

TEST_CASE("gamma0 kernel shape") {
    const PiecewiseLinear g0 = gamma0();
    SECTION("endpoints and oddness") {
        CHECK(g0.eval(1.0) == 0.0);
        CHECK(g0.eval(-1.0) == 0.0);
        CHECK(g0.eval(0.0) == 0.0);
        for (double y = 0.0; y <= 1.0; y += 1e-3)
            CHECK(g0.eval(-y) == Catch::Approx(-g0.eval(y)).margin(1e-12));
    }
    SECTION("nodes on the quarter lattice") {
        REQUIRE(g0.nodes().size() == 9);
        for (int i = 0; i < 9; ++i) CHECK(g0.nodes()[static_cast<std::size_t>(i)] == 0.25 * (i - 4));
    }
    SECTION("figure magnitudes") {
        CHECK(std::abs(g0.eval(0.5)) == Catch::Approx(0.5).margin(1e-14));
        CHECK(std::abs(g0.eval(0.75)) == Catch::Approx(0.25).margin(1e-14));
        CHECK(std::abs(g0.eval(0.25)) == Catch::Approx(0.25).margin(1e-14));
    }
    SECTION("quadrature of the defining integral fixes the signs") {
        // gamma_0(y) = int_0^1 h(y+t) h^1(t) dt
        const StepFunction h = haar_h(kUnit);
        const StepFunction ind = haar_indicator(kUnit);
        for (double y : {-0.9, -0.75, -0.5, -0.3, -0.25, 0.1, 0.25, 0.5, 0.6, 0.75, 0.95}) {
            const double direct = oracles::quadrature(
                [&](double t) { return h.eval(y + t) * ind.eval(t); }, 0.0, 1.0, 40000);
            CHECK(g0.eval(y) == Catch::Approx(direct).margin(5e-4));
        }
        CHECK(g0.eval(0.5) > 0.0);
    }
}

TEST_CASE("gamma scale sums") {
    CHECK(gamma_sum(0.0, -10, 10) == 0.0);
    SECTION("oddness") {
        RandomStream rng(3);
        for (int trial = 0; trial < 50; ++trial) {
            const double x = 20.0 * (rng.uniform() - 0.5);
            CHECK(gamma_sum(-x, -10, 10) == Catch::Approx(-gamma_sum(x, -10, 10)).margin(1e-12));
        }
    }
    SECTION("strict positivity on the tested grid") {
        for (int i = 1; i <= 1000; ++i) {
            const double x = 0.01 * i;
            CHECK(gamma_sum(x, -10, 10) > 0.0);
        }
    }
    SECTION("window doubling only moves the geometric tails") {
        for (double x : {0.05, 0.3, 0.75, 1.0, 2.5, 7.0}) {
            const double narrow = gamma_sum(x, -10, 10);
            const double wide = gamma_sum(x, -20, 20);
            CHECK(std::abs(narrow - wide) < 1e-3);
        }
    }
    SECTION("empty window rejected") {
        CHECK_THROWS_AS(gamma_sum(1.0, 3, 2), std::invalid_argument);
    }
}

TEST_CASE("hilbert pv closed form") {
    SECTION("unit indicator at x = 2") {
        const StepFunction f = StepFunction::indicator(0.0, 1.0);
        CHECK(hilbert_pv(f, 2.0) == Catch::Approx(std::log(2.0)).margin(1e-12));
    }
    SECTION("breakpoints are rejected with guidance") {
        const StepFunction f = StepFunction::indicator(0.0, 1.0);
        CHECK_THROWS_AS(hilbert_pv(f, 1.0), std::domain_error);
    }
    SECTION("odd kernel gives antisymmetric output around even functions") {
        const StepFunction f({-1.0, -0.5, 0.5, 1.0}, {1.0, 3.0, 1.0}); // even about 0
        for (double t : {0.1, 0.3, 0.7, 1.3, 2.9})
            CHECK(hilbert_pv(f, t) == Catch::Approx(-hilbert_pv(f, -t)).margin(1e-12));
    }
    SECTION("matches the truncated quadrature oracle as eps shrinks") {
        RandomStream rng(17);
        const StepFunction f = random_step_function(kUnit, 4, true, rng);
        for (double x : {-0.51, 0.131072 + std::ldexp(1.0, -20), 0.77 + 1e-7, 1.9}) {
            const double closed = hilbert_pv(f, x);
            // once eps is below the distance to the nearest breakpoint the
            // truncated integral equals the principal value; what remains is
            // the oracle's own quadrature floor
            const double approx = oracles::pv_quadrature(f, x, 1e-6, 1e4, 1000000);
            CHECK(closed == Catch::Approx(approx).margin(1e-3));
        }
    }
    SECTION("pv across the singular cell cancels") {
        const StepFunction f = haar_h(kUnit);
        const double x = 0.5 + std::ldexp(1.0, -20);
        const double closed = hilbert_pv(f, x);
        const double quad = oracles::pv_quadrature(f, x, 1e-7, 1e3, 400000);
        CHECK(closed == Catch::Approx(quad).margin(1e-3));
    }
}
