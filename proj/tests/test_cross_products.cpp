#include <catch_amalgamated.hpp>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles/frozen.hpp"
#include "shellcount/cross.hpp"

using namespace shellcount;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ShellDomain kShell{1.0, 2.0, 3};
constexpr CrossProductKind kF{Kind::F_DIRICHLET, 0.0};
constexpr CrossProductKind kG{Kind::G_NEUMANN_BESSEL, 0.0};

CrossProductKind kindH(double delta) { return {Kind::H_NEUMANN_ULTRA, delta}; }

// long double Boost evaluation of f
long double boost_f(long double nu, long double x) {
    using boost::math::cyl_bessel_j;
    using boost::math::cyl_neumann;
    return cyl_bessel_j(nu, 2 * x) * cyl_neumann(nu, x) - cyl_bessel_j(nu, x) * cyl_neumann(nu, 2 * x);
}

long double boost_g(long double nu, long double x) {
    using boost::math::cyl_bessel_j_prime;
    using boost::math::cyl_neumann_prime;
    return cyl_bessel_j_prime(nu, 2 * x) * cyl_neumann_prime(nu, x) -
           cyl_bessel_j_prime(nu, x) * cyl_neumann_prime(nu, 2 * x);
}

}  // namespace

TEST_CASE("f, g, ht at frozen points") {
    const CrossProducts cp(kShell);
    for (const auto& row : frozen::cross) {
        const double nu = row[0], delta = row[1], x = row[2];
        CAPTURE(nu, delta, x);
        CHECK_THAT(cp.eval(kF, nu, x), WithinRel(row[3], 1e-12));
        CHECK_THAT(cp.eval(kG, nu, x), WithinRel(row[4], 1e-12));
        CHECK_THAT(cp.eval(kindH(delta), nu, x), WithinRel(row[5], 1e-12));
        // the unscaled h
        const double scale = std::pow(2.0, delta) * std::pow(x, 2.0 * delta);
        CHECK_THAT(cp.hfrak_direct(nu, delta, x) * scale, WithinRel(row[5], 1e-11));
    }
}

TEST_CASE("evanescent cross-products keep their log scale") {
    const CrossProducts cp(kShell);
    for (const auto& row : frozen::cross_log) {
        const double nu = row[0], delta = row[1], x = row[2];
        CAPTURE(nu, x);
        const ScaledValue f = cp.eval_scaled(kF, nu, x), h = cp.eval_scaled(kindH(delta), nu, x);
        CHECK_THAT(f.log_abs(), WithinAbs(row[3], 1e-11 * std::max(1.0, std::fabs(row[3]))));
        CHECK(f.sign() == static_cast<int>(row[4]));
        CHECK_THAT(h.log_abs(), WithinAbs(row[5], 1e-11 * std::max(1.0, std::fabs(row[5]))));
        CHECK(h.sign() == static_cast<int>(row[6]));
    }
}

TEST_CASE("f and g agree with long double Boost on a seeded sweep") {
    const CrossProducts cp(kShell);
    std::mt19937_64 rng(5150);
    std::uniform_real_distribution<double> unu(0.0, 30.0), ux(0.2, 60.0);
    for (int i = 0; i < 400; ++i) {
        const double nu = unu(rng), x = ux(rng);
        if (x < nu) continue;  // oscillatory side only; long double Y overflows deep inside
        CAPTURE(nu, x);
        // error relative to the amplitude 2/(pi x) (f) or 2/(pi x) (g, times the 1/x^2 scale of J'Y')
        const double amp = 2.0 / (std::numbers::pi * x);
        CHECK(std::fabs(cp.eval(kF, nu, x) - static_cast<double>(boost_f(nu, x))) <= 1e-11 * amp);
        CHECK(std::fabs(cp.eval(kG, nu, x) - static_cast<double>(boost_g(nu, x))) <= 1e-11 * amp);
    }
}

TEST_CASE("ht decomposes as g plus the correction E") {
    const CrossProducts cp(kShell);
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> unu(0.5, 40.0), ux(0.5, 50.0);
    for (int i = 0; i < 300; ++i) {
        const double nu = unu(rng), x = ux(rng);
        for (double delta : {0.5, 1.0, -0.25}) {
            if (nu < std::fabs(delta)) continue;
            CAPTURE(nu, x, delta);
            const ScaledValue h = cp.eval_scaled(kindH(delta), nu, x);
            const ScaledValue g = cp.eval_scaled(kG, nu, x);
            const ScaledValue e = cp.correction_e(nu, delta, x);
            const double lg = h.log_scale;
            const double sum = g.at_scale(lg) + e.at_scale(lg);
            CHECK(std::fabs(h.mantissa - sum) <= 1e-12 * (std::fabs(g.at_scale(lg)) + std::fabs(e.at_scale(lg))));
        }
    }
    // delta = 0: ht is g
    CHECK(cp.eval(kindH(0.0), 3.0, 7.0) == cp.eval(kG, 3.0, 7.0));
}

TEST_CASE("complex ht reduces to the real value and is even and real on the axes") {
    const CrossProducts cp(kShell);
    for (double nu : {0.5, 2.5, 7.0}) {
        for (double x : {0.8, 4.0, 11.3}) {
            CAPTURE(nu, x);
            const double re = cp.eval(kindH(0.5), nu, x);
            const ComplexSeriesValue z = cp.eval_complex_htilde(nu, 0.5, {x, 0.0});
            CHECK_THAT(z.re, WithinAbs(re, 1e-11 * std::max(1.0, std::fabs(re))));
            CHECK_THAT(z.im, WithinAbs(0.0, 1e-11 * std::max(1.0, std::fabs(re))));
            const ComplexSeriesValue a = cp.eval_complex_htilde(nu, 0.5, {x, 1.3});
            const ComplexSeriesValue b = cp.eval_complex_htilde(nu, 0.5, {-x, -1.3});
            const ComplexSeriesValue c = cp.eval_complex_htilde(nu, 0.5, {x, -1.3});
            CHECK_THAT(a.re, WithinRel(b.re, 1e-12));
            CHECK_THAT(a.im, WithinRel(b.im, 1e-12));
            CHECK_THAT(a.im, WithinRel(-c.im, 1e-12));
        }
    }
    CHECK_THROWS_AS(cp.eval_complex_htilde(2.5, 0.5, {0.0, 0.0}), domain_error);
    CHECK_THROWS_AS(cp.eval_complex_htilde(2.5, 0.5, {40.0, 40.0}), domain_error);
    CHECK_NOTHROW(cp.eval_complex_htilde(0.5, 0.5, {0.0, 0.0}));
}

TEST_CASE("complex ht at frozen points, series and Hankel paths") {
    const CrossProducts cp(kShell);
    for (const auto& row : frozen::complex_ht) {
        const std::complex<double> z(row[2], row[3]), ref(row[4], row[5]);
        CAPTURE(row[0], row[1], z);
        const ComplexSeriesValue v = cp.eval_complex_htilde(row[0], row[1], z);
        CHECK(std::abs(v.value() - ref) <= 1e-9 * std::abs(ref));
        CHECK(v.reliable());
    }
}

TEST_CASE("ball kinds") {
    const CrossProducts ball(ShellDomain{0.0, 1.0, 3});
    for (double nu : {1.5, 3.5, 12.5}) {
        for (double x : {0.7, 4.2, 19.0}) {
            CAPTURE(nu, x);
            const UltrasphericalQuad u = ultraspherical(nu, 0.5, x);
            CHECK_THAT(ball.eval({Kind::JPRIME_BALL, 0.5}, nu, x), WithinRel(u.jp, 1e-12));
            CHECK_THAT(ball.eval({Kind::J_BALL, 0.5}, nu, x), WithinRel(bessel_quad(nu, x).j, 1e-13));
        }
    }
    CHECK_THROWS_AS(ball.eval(kF, 1.0, 2.0), domain_error);
    CHECK_THROWS_AS(ball.eval({Kind::JPRIME_BALL, 1.0}, 0.5, 2.0), domain_error);
}

TEST_CASE("regime classification boundaries") {
    const RegimeKnobs k;
    const double nu = 100.0, w = transition_halfwidth(nu, k.eps);
    CHECK(classify_regime(nu, nu + w, k) == ZeroRegime::pre_transition);
    CHECK(classify_regime(nu, nu + 0.5 * w, k) == ZeroRegime::transition);
    CHECK(classify_regime(nu, nu - w, k) == ZeroRegime::evanescent);
    CHECK(classify_regime(nu, 1.25 * nu, k) == ZeroRegime::oscillatory);
    CHECK(kind_from_string("H") == Kind::H_NEUMANN_ULTRA);
    CHECK_THROWS_AS(kind_from_string("Q"), domain_error);
}

TEST_CASE("main terms of the asymptotics stay within their error bounds") {
    // calibration used nu in {60, 120, 240}; check other orders on a second shell
    const RegimeKnobs knobs;
    std::mt19937_64 rng(2718);
    for (const ShellDomain dom : {ShellDomain{1.0, 2.0, 3}, ShellDomain{1.0, 1.5, 2}}) {
        const CrossProducts cp(dom);
        for (double nu : {80.0, 160.0}) {
            for (const CrossProductKind k : {kF, kG, kindH(dom.delta())}) {
                std::uniform_real_distribution<double> ux(0.55 * nu / dom.r, 2.0 * nu / dom.r);
                int n = 0;
                for (int i = 0; i < 300; ++i) {
                    const double x = ux(rng);
                    if (dom.R * x <= nu * 1.05) continue;
                    const ZeroRegime reg = classify_regime(nu, dom.r * x, knobs);
                    const AsymptoticPrediction p = asymptotic_predict(dom, k, nu, x, reg, knobs);
                    const double exact = cp.eval_scaled(k, nu, x).at_scale(p.log_scale);
                    CAPTURE(dom.R, nu, to_string(k.kind), x, to_string(reg));
                    CHECK(std::fabs(exact - p.main) <= p.errbound);
                    ++n;
                }
                CHECK(n > 100);
            }
        }
    }
}

TEST_CASE("asymptotic_predict rejects points outside the stated regime") {
    const RegimeKnobs knobs;
    CHECK_THROWS_AS(asymptotic_predict(kShell, kF, 100.0, 150.0, ZeroRegime::evanescent, knobs), out_of_regime);
    CHECK_THROWS_AS(asymptotic_predict(ShellDomain{0.0, 1.0, 2}, {Kind::J_BALL, 0.0}, 10.0, 20.0,
                                       ZeroRegime::oscillatory, knobs),
                    out_of_regime);
}
