#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/airy.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles/frozen.hpp"
#include "shellcount/phase.hpp"

using namespace shellcount;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using std::numbers::pi;

TEST_CASE("G, H and F at frozen points") {
    const PhaseGeometry pg(ShellDomain{1.0, 2.0, 2});
    CHECK_THAT(pg.G(0.3), WithinRel(frozen::G_03, 1e-14));
    CHECK_THAT(pg.G(1.5), WithinRel(frozen::G_15, 1e-14));
    CHECK_THAT(pg.H(0.1), WithinRel(frozen::H_01, 1e-14));
    CHECK_THAT(pg.F(5.0, 3.2), WithinRel(frozen::F_5_32, 1e-14));
}

TEST_CASE("G endpoints and monotonicity") {
    for (const ShellDomain dom : {ShellDomain{1.0, 2.0, 2}, ShellDomain{0.3, 1.0, 3}, ShellDomain{0.0, 1.5, 2}}) {
        const PhaseGeometry pg(dom);
        CHECK_THAT(pg.G(0.0), WithinRel(dom.width() / pi, 1e-15));
        CHECK(pg.G(dom.R) == 0.0);
        double prev = pg.G(0.0);
        for (int i = 1; i <= 400; ++i) {
            const double x = dom.R * i / 400.0;
            const double v = pg.G(x);
            CHECK(v <= prev + 1e-15);
            prev = v;
        }
    }
    const PhaseGeometry pg(ShellDomain{1.0, 2.0, 2});
    CHECK_THROWS_AS(pg.G(2.5), domain_error);
    CHECK_THROWS_AS(pg.G(-0.1), domain_error);
}

TEST_CASE("dG is the derivative of G") {
    const PhaseGeometry pg(ShellDomain{1.0, 2.0, 2});
    for (double x : {0.2, 0.7, 0.99, 1.01, 1.5, 1.9}) {
        const double h = 1e-6;
        CHECK_THAT(pg.dG(x), WithinAbs((pg.G(x + h) - pg.G(x - h)) / (2 * h), 1e-8));
    }
}

TEST_CASE("H inverts G on [r, R]") {
    const PhaseGeometry pg(ShellDomain{1.0, 2.0, 2});
    for (int i = 0; i <= 200; ++i) {
        const double x = 1.0 + i / 200.0;
        CHECK_THAT(pg.H(pg.G(x)), WithinAbs(x, 1e-12));
    }
    CHECK(pg.H(0.0) == 2.0);
    CHECK_THROWS_AS(pg.H(pg.G(1.0) + 1e-6), domain_error);
}

TEST_CASE("area is the integral of G") {
    for (const ShellDomain dom : {ShellDomain{1.0, 2.0, 2}, ShellDomain{0.25, 1.0, 3}, ShellDomain{0.0, 1.0, 2}}) {
        const PhaseGeometry pg(dom);
        auto f = [&](double x) { return pg.G(x); };
        double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, dom.R, 15, 1e-14);
        if (dom.r > 0.0) {
            // split at the kink x = r
            quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, dom.r, 15, 1e-14) +
                   boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, dom.r, dom.R, 15, 1e-14);
        }
        CHECK_THAT(pg.area(), WithinAbs(quad, 1e-10));
    }
}

TEST_CASE("F is the Minkowski functional of the graph of G") {
    const PhaseGeometry pg(ShellDomain{1.0, 2.0, 2});
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.01, 100.0), t(0.1, 10.0);
    for (int i = 0; i < 1000; ++i) {
        const double nu = u(rng), y = u(rng), s = t(rng);
        CAPTURE(nu, y, s);
        const double x = pg.F(nu, y);
        CHECK(x >= nu / 2.0);
        CHECK_THAT(pg.cal_g(nu, x), WithinRel(y, 1e-12));
        CHECK_THAT(pg.F(s * nu, s * y), WithinRel(s * x, 1e-12));
    }
    // increasing in both arguments
    CHECK(pg.F(5.0, 3.3) > pg.F(5.0, 3.2));
    CHECK(pg.F(5.1, 3.2) > pg.F(5.0, 3.2));
    // axes
    CHECK_THAT(pg.F(0.0, 2.0), WithinRel(2.0 * pi, 1e-15));
    CHECK(pg.F(6.0, 0.0) == 3.0);
    CHECK_THROWS_AS(pg.F(0.0, 0.0), domain_error);
}

TEST_CASE("ball Minkowski functional") {
    for (double nu : {0.5, 3.0, 40.0}) {
        for (double y : {0.25, 2.0, 17.0}) {
            const double x = minkowski_fg(nu, y);
            CHECK_THAT(x * g_fn(nu / x), WithinRel(y, 1e-12));
        }
    }
}

TEST_CASE("zeta map") {
    // z >= 1 and z <= 1 branches from their defining relations
    for (double z : {1.2, 2.0, 7.5}) {
        const double lhs = 2.0 / 3.0 * std::pow(-zeta_map(z), 1.5);
        CHECK_THAT(lhs, WithinRel(std::sqrt(z * z - 1) - std::acos(1 / z), 1e-13));
    }
    for (double z : {0.1, 0.5, 0.9}) {
        const double s = std::sqrt(1 - z * z);
        CHECK_THAT(2.0 / 3.0 * std::pow(zeta_map(z), 1.5), WithinRel(std::log((1 + s) / z) - s, 1e-13));
    }
    // near z = 1: zeta ~ 2^{1/3} (1 - z)
    for (double h : {1e-4, 1e-7, 1e-10}) {
        CHECK_THAT(zeta_map(1 - h), WithinRel(std::cbrt(2.0) * h, 1e-3));
        CHECK_THAT(zeta_map(1 + h), WithinRel(-std::cbrt(2.0) * h, 1e-3));
    }
    CHECK(zeta_map(1.0) == 0.0);
}

TEST_CASE("Airy zero tables match Boost") {
    const auto& z1 = detail::airy_zeros(1);
    const auto& z2 = detail::airy_zeros(2);
    for (int k = 1; k <= 140; k += 7) {
        CHECK_THAT(z1[k - 1], WithinRel(-boost::math::airy_ai_zero<double>(k), 1e-13));
    }
    CHECK_THAT(z2[0], WithinRel(1.018792971647471, 1e-14));
    CHECK_THAT(z2[1], WithinRel(3.248197582179837, 1e-14));
}

TEST_CASE("psi phases: limits, continuity and the complement form") {
    for (int which : {1, 2}) {
        CHECK(psi_phase(which, 60.0) == 0.0);
        CHECK(psi_phase(which, -60.0) == 0.25);
        // left tail approaches 1/4
        CHECK_THAT(psi_phase(which, -8.0), WithinAbs(0.25, 1e-8));
        // right tail decays like z^{-3/2}
        CHECK(std::fabs(psi_phase(which, 40.0)) < 0.01);
        for (double z = -6.0; z <= 6.0; z += 0.013) {
            const double a = psi_phase(which, z), b = psi_phase(which, z + 1e-7);
            CAPTURE(which, z);
            CHECK(std::fabs(a - b) < 1e-5);
            if (z <= 0.0) CHECK_THAT(psi_phase_complement(which, z), WithinAbs(0.25 - a, 1e-12));
        }
    }
    CHECK_THROWS_AS(psi_phase(3, 0.0), domain_error);
}

TEST_CASE("chord T solves the line equation for a rational slope") {
    const PhaseGeometry pg(ShellDomain{1.0, 2.0, 2}, RationalSlope{1, 3});
    const double mu = 40.0, c = 0.25, s = 1.0 / 3.0;
    for (int l : {0, 3, 10}) {
        const double lo = l / mu;
        const double beta = pg.G(lo) + s * lo + c / mu, gamma = pg.G(1.0) + s + c / mu;
        for (int i = 0; i <= 10; ++i) {
            const double y = beta + (gamma - beta) * i / 10.0;
            const double t = pg.chord_t(y, l, mu, c);
            CHECK_THAT(pg.G(t) + s * t + c / mu, WithinAbs(y, 1e-12));
        }
    }
    CHECK_THROWS_AS(PhaseGeometry(ShellDomain{1.0, 2.5, 2}, RationalSlope{1, 3}), domain_error);
    CHECK_THROWS_AS(PhaseGeometry(ShellDomain{1.0, 2.0, 2}).chord_t(0.5, 0, 10.0, 0.25), domain_error);
}
