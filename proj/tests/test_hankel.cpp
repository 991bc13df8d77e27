#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "dyad/hankel.hpp"
#include "dyad/random.hpp"

using namespace dyad;

namespace {

double svd_norm_oracle(const HankelMatrix& a) {
    Eigen::MatrixXcd m(a.size(), a.size());
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) m(i, j) = a.entry(i, j);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

} // namespace

TEST_CASE("hankel matrix structure") {
    SpectralPolynomial b(2);
    b.set(-2, {5.0, 1.0});
    b.set(0, {1.0, 0.0});
    b.set(1, {2.0, -1.0});
    const HankelMatrix a = hankel_matrix(b, 4);
    CHECK(!a.truncated());
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m) CHECK(a.entry(n, m) == b.coeff(n + m));
    // anti-analytic perturbations leave the matrix unchanged
    SpectralPolynomial b2 = b;
    b2.set(-1, {9.0, 9.0});
    const HankelMatrix a2 = hankel_matrix(b2, 4);
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m) CHECK(a2.entry(n, m) == a.entry(n, m));
    // a too-small matrix carries the truncation warning
    CHECK(hankel_matrix(b, 1).truncated());
}

TEST_CASE("matrix action matches the projection formula") {
    RandomStream rng(1);
    for (int trial = 0; trial < 20; ++trial) {
        const SpectralPolynomial b = random_spectral(4, rng);
        const int m = b.analytic_degree() + 1;
        const HankelMatrix a = hankel_matrix(b, std::max(m, 1));
        const SpectralPolynomial phi = random_unit_analytic(a.size() - 1, rng);
        // the matrix is the linear avatar of the antilinear operator: it acts
        // on the conjugated coefficient vector of phi
        std::vector<Complex> v(static_cast<std::size_t>(a.size()));
        for (int k = 0; k < a.size(); ++k)
            v[static_cast<std::size_t>(k)] = std::conj(phi.coeff(k));
        const std::vector<Complex> av = a.apply(v);
        // P_+(b conj(phi)) read off directly
        const SpectralPolynomial image = proj_plus(b * phi.conjugated());
        for (int k = 0; k < a.size(); ++k)
            CHECK(std::abs(av[static_cast<std::size_t>(k)] - image.coeff(k)) < 1e-12);
    }
}

TEST_CASE("purely anti-analytic symbols give the zero matrix") {
    SpectralPolynomial b(3);
    b.set(-1, {1.0, 2.0});
    b.set(-3, {0.5, 0.0});
    const HankelMatrix a = hankel_matrix(b, 4);
    for (int n = 0; n < 4; ++n)
        for (int m = 0; m < 4; ++m) CHECK(a.entry(n, m) == Complex{});
    CHECK(hankel_norm(b, 4).value == 0.0);
}

TEST_CASE("hankel norm of elementary symbols") {
    CHECK(hankel_norm(SpectralPolynomial::mode(1), 2).value == Catch::Approx(1.0).margin(1e-10));
    CHECK(hankel_norm(SpectralPolynomial::mode(1, {-3.0, 4.0}), 2).value ==
          Catch::Approx(5.0).margin(1e-9));
}

TEST_CASE("hankel norm matches a dense svd") {
    RandomStream rng(2);
    for (int trial = 0; trial < 30; ++trial) {
        const SpectralPolynomial b = random_spectral(4, rng);
        const int m = std::max(b.analytic_degree() + 1, 1);
        const HankelNormResult r = hankel_norm(b, m);
        CHECK(r.converged);
        CHECK(r.value == Catch::Approx(svd_norm_oracle(hankel_matrix(b, m))).margin(1e-8));
    }
    // and at a larger padded size the norm is unchanged
    const SpectralPolynomial b = random_spectral(3, rng);
    CHECK(hankel_norm(b, 4).value == Catch::Approx(hankel_norm(b, 12).value).margin(1e-9));
}

TEST_CASE("commutator identity on the model") {
    SECTION("constant symbols commute") {
        RandomStream rng(3);
        const SpectralPolynomial f = random_spectral(5, rng);
        CHECK(commutator_identity_check(SpectralPolynomial::constant({2.0, -1.0}), f, 16) <
              1e-14);
    }
    SECTION("elementary pair") {
        CHECK(commutator_identity_check(SpectralPolynomial::mode(1),
                                        SpectralPolynomial::mode(-1), 8) <= 1e-14);
    }
    SECTION("band overflow is rejected") {
        CHECK_THROWS_AS(commutator_identity_check(SpectralPolynomial::mode(5),
                                                  SpectralPolynomial::mode(5), 8),
                        std::invalid_argument);
    }
    SECTION("block computations of the proof") {
        RandomStream rng(4);
        for (int trial = 0; trial < 50; ++trial) {
            const SpectralPolynomial b = random_spectral(6, rng);
            const SpectralPolynomial f = random_spectral(6, rng);
            // P_+ [b,H] P_- = -2 P_+ b P_-  and  P_- [b,H] P_- = 0
            const SpectralPolynomial pf = proj_minus(f);
            const SpectralPolynomial comm = b * hilbert_alg(pf) - hilbert_alg(b * pf);
            CHECK((proj_plus(comm) - Complex{-2.0, 0.0} * proj_plus(b * pf)).l2_norm() <
                  1e-12);
            CHECK(proj_minus(comm).l2_norm() < 1e-12);
        }
    }
}

TEST_CASE("nehari lower bound") {
    SECTION("constant test pair is included") {
        SpectralPolynomial b(2);
        b.set(0, {0.7, 0.0});
        CHECK(nehari_lower_bound(b, 0, 1) >= 0.7 - 1e-12);
    }
    SECTION("single frequency attains the norm") {
        const SpectralPolynomial b = SpectralPolynomial::mode(1);
        CHECK(nehari_lower_bound(b, 10, 1) == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("never exceeds the hankel norm, monotone in samples") {
        RandomStream rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            const SpectralPolynomial b = random_spectral(4, rng);
            const double norm = hankel_norm(b, 5).value;
            const double l1 = nehari_lower_bound(b, 100, 42);
            const double l2 = nehari_lower_bound(b, 1000, 42);
            CHECK(l1 <= norm + 1e-10);
            CHECK(l2 <= norm + 1e-10);
            CHECK(l2 >= l1);
        }
    }
    SECTION("ten thousand samples get within twenty percent") {
        RandomStream rng(6);
        for (int trial = 0; trial < 5; ++trial) {
            const SpectralPolynomial b = random_spectral(4, rng);
            const double norm = hankel_norm(b, 5).value;
            const double lower = nehari_lower_bound(b, 10000, 7);
            CHECK(lower >= 0.8 * norm);
        }
    }
}

TEST_CASE("nehari inf estimate") {
    SECTION("single frequency is extremal") {
        const NehariReport r = nehari_inf_estimate(SpectralPolynomial::mode(1), 8, 100, 1);
        CHECK(r.sigma0 == Catch::Approx(1.0).margin(1e-10));
        CHECK(r.inf_estimate == Catch::Approx(1.0).margin(1e-6));
        CHECK(r.gap <= 1e-6);
    }
    SECTION("anti-analytic symbols cost nothing") {
        SpectralPolynomial b(3);
        b.set(-2, {1.5, -0.5});
        b.set(-3, {0.25, 0.0});
        const NehariReport r = nehari_inf_estimate(b, 8, 100, 1);
        CHECK(r.sigma0 <= 1e-12);
        CHECK(r.inf_estimate <= 1e-6);
    }
    SECTION("budget below the band is rejected") {
        CHECK_THROWS_AS(nehari_inf_estimate(SpectralPolynomial::mode(4), 3, 50, 1),
                        std::invalid_argument);
    }
    SECTION("sandwich and budget refinement on random symbols") {
        RandomStream rng(7);
        std::vector<double> gaps16, gaps32;
        for (int trial = 0; trial < 10; ++trial) {
            const SpectralPolynomial b = random_spectral(4, rng);
            const NehariReport r16 = nehari_inf_estimate(b, 16, 600, 3);
            const NehariReport r32 = nehari_inf_estimate(b, 32, 600, 3);
            CHECK(r16.inf_estimate >= r16.sigma0 - 1e-6);
            CHECK(r32.inf_estimate >= r32.sigma0 - 1e-6);
            gaps16.push_back(r16.gap / std::max(r16.sigma0, 1e-12));
            gaps32.push_back(r32.gap / std::max(r32.sigma0, 1e-12));
        }
        std::sort(gaps16.begin(), gaps16.end());
        std::sort(gaps32.begin(), gaps32.end());
        CHECK(gaps16[gaps16.size() / 2] <= 0.10);
        // a doubled budget tightens the typical gap
        CHECK(gaps32[gaps32.size() / 2] <= gaps16[gaps16.size() / 2] + 1e-12);
    }
}
