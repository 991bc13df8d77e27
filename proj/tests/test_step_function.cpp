#include <catch2/catch_amalgamated.hpp>

#include "dyad/random.hpp"
#include "dyad/step_function.hpp"

using namespace dyad;

TEST_CASE("indicator basics") {
    const StepFunction f = StepFunction::indicator(0.0, 1.0);
    CHECK(f.eval(0.0) == 1.0);
    CHECK(f.eval(0.5) == 1.0);
    CHECK(f.eval(1.0) == 0.0);
    CHECK(f.eval(-0.1) == 0.0);
    CHECK(f.integral() == 1.0);
    CHECK(inner_product(f, f) == 1.0);
}

TEST_CASE("translate is exact and invertible") {
    const StepFunction f = StepFunction::indicator(0.0, 1.0);
    const StepFunction g = f.translate(0.5);
    CHECK(g.breakpoints().front() == 0.5);
    CHECK(g.breakpoints().back() == 1.5);
    CHECK(g.eval(0.25) == 0.0);
    CHECK(g.eval(0.75) == 1.0);
    CHECK(sup_distance(f.translate(0.0), f) == 0.0);

    RandomStream rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        StepFunction h({rng.uniform(), 1.0 + rng.uniform(), 2.0 + rng.uniform()},
                       {rng.gaussian(), rng.gaussian()});

        // on the dyadic grid the shift arithmetic is exact and round-trips
        const double d = std::ldexp(std::floor(1000.0 * rng.gaussian()), -8);
        const StepFunction hd({std::ldexp(std::floor(256.0 * rng.uniform()), -8),
                               1.0 + std::ldexp(std::floor(256.0 * rng.uniform()), -8), 2.5},
                              {rng.gaussian(), rng.gaussian()});
        CHECK(sup_distance(hd.translate(d).translate(-d), hd) == 0.0);

        // for arbitrary shifts the values are untouched and the breakpoints
        // move by at most a couple of ulps
        const double a = 3.0 * rng.gaussian();
        const StepFunction back = h.translate(a).translate(-a);
        REQUIRE(back.values().size() == h.values().size());
        for (std::size_t i = 0; i < h.values().size(); ++i)
            CHECK(back.values()[i] == h.values()[i]);
        for (std::size_t i = 0; i < h.breakpoints().size(); ++i) {
            const double x = h.breakpoints()[i];
            CHECK(std::abs(back.breakpoints()[i] - x) <=
                  4.0 * std::ldexp(1.0, -52) * std::max(1.0, std::abs(x) + std::abs(a)));
        }
    }
}

TEST_CASE("dilate preserves the matched Lp norm") {
    const StepFunction f = StepFunction::indicator(0.0, 1.0);
    const StepFunction g = f.dilate(2.0, 2.0);
    CHECK(g.breakpoints().back() == 2.0);
    CHECK(g.values()[0] == Catch::Approx(std::exp2(-0.5)).epsilon(1e-15));

    RandomStream rng(11);
    for (double lambda : {0.3, 1.0, 7.0}) {
        for (double p : {1.0, 2.0, 4.0}) {
            StepFunction h({-0.5 + rng.uniform(), 1.0, 2.0, 3.5},
                           {rng.gaussian(), rng.gaussian(), rng.gaussian()});
            CHECK(h.dilate(lambda, p).lp_norm(p) ==
                  Catch::Approx(h.lp_norm(p)).margin(1e-12));
        }
    }
    CHECK_THROWS_AS(f.dilate(0.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(f.dilate(-1.0, 2.0), std::invalid_argument);
}

TEST_CASE("arithmetic over merged breakpoints") {
    const StepFunction f({0.0, 1.0, 2.0}, {1.0, 2.0});
    const StepFunction g({0.5, 1.5}, {10.0});
    const StepFunction sum = f + g;
    CHECK(sum.eval(0.25) == 1.0);
    CHECK(sum.eval(0.75) == 11.0);
    CHECK(sum.eval(1.25) == 12.0);
    CHECK(sum.eval(1.75) == 2.0);
    const StepFunction prod = f * g;
    CHECK(prod.eval(0.25) == 0.0);
    CHECK(prod.eval(0.75) == 10.0);
    CHECK(prod.eval(1.25) == 20.0);
    CHECK(prod.eval(1.75) == 0.0);
    CHECK(inner_product(f, g) == Catch::Approx(0.5 * 10.0 + 0.5 * 20.0));
}

TEST_CASE("lp norms") {
    const StepFunction f = StepFunction::indicator(0.0, 0.5, 2.0);
    CHECK(f.lp_norm(1.0) == 1.0);
    CHECK(f.lp_norm(std::numeric_limits<double>::infinity()) == 2.0);
    const StepFunction z;
    CHECK(z.lp_norm(2.0) == 0.0);
}

TEST_CASE("compression drops zero tails") {
    const StepFunction f({0.0, 1.0, 2.0, 3.0}, {0.0, 5.0, 0.0});
    CHECK(f.piece_count() == 1);
    CHECK(f.support()->first == 1.0);
    CHECK(f.support()->second == 2.0);
    const StepFunction g = f - f;
    CHECK(g.is_zero());
}

TEST_CASE("invalid construction rejected") {
    CHECK_THROWS_AS(StepFunction({1.0, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(StepFunction({0.0, 1.0}, {std::nan("")}), std::invalid_argument);
    CHECK_THROWS_AS(StepFunction({0.0, 1.0, 2.0}, {1.0}), std::invalid_argument);
}
