#include <catch_amalgamated.hpp>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles/frozen.hpp"
#include "shellcount/zeros.hpp"

using namespace shellcount;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const ShellDomain kAnnulus{1.0, 2.0, 2};
const ShellDomain kShell3{1.0, 2.0, 3};
constexpr CrossProductKind kF{Kind::F_DIRICHLET, 0.0};
constexpr CrossProductKind kG{Kind::G_NEUMANN_BESSEL, 0.0};

void check_sequence(const ZeroSequence& s, const double (&ref)[5], int k0) {
    REQUIRE(s.zeros.size() >= 5);
    for (int i = 0; i < 5; ++i) {
        CAPTURE(i);
        CHECK(s.zeros[i].k == k0 + i);
        CHECK_THAT(s.zeros[i].x, WithinRel(ref[i], 1e-12));
    }
}

// sign changes of f on a fine grid, in long double through Boost
int boost_f_sign_changes(double nu, double a, double b, double step) {
    auto f = [nu](long double x) {
        using boost::math::cyl_bessel_j;
        using boost::math::cyl_neumann;
        return cyl_bessel_j((long double)nu, 2 * x) * cyl_neumann((long double)nu, x) -
               cyl_bessel_j((long double)nu, x) * cyl_neumann((long double)nu, 2 * x);
    };
    int n = 0;
    long double prev = f(a);
    for (long double x = a + step; x <= b; x += step) {
        const long double v = f(x);
        if ((v > 0) != (prev > 0)) ++n;
        prev = v;
    }
    return n;
}

}  // namespace

TEST_CASE("first zeros match frozen values") {
    const ZeroFinder a(kAnnulus), s(kShell3), ball(ShellDomain{0.0, 1.0, 3});
    check_sequence(a.find_zeros(kF, 0.0, 16.0, true), frozen::zeros_f0[0], 1);
    check_sequence(a.find_zeros(kF, 3.5, 16.0, true), frozen::zeros_f35[0], 1);
    check_sequence(a.find_zeros(kG, 0.0, 16.0, true), frozen::zeros_g0[0], 1);
    check_sequence(s.find_zeros({Kind::H_NEUMANN_ULTRA, 0.5}, 2.5, 13.0, true), frozen::zeros_h25[0], 0);
    check_sequence(s.find_zeros({Kind::H_NEUMANN_ULTRA, 0.5}, 0.5, 16.0, true), frozen::zeros_h05[0], 1);
    check_sequence(ball.find_zeros({Kind::JPRIME_BALL, 0.5}, 3.5, 19.0, true), frozen::zeros_ball_jp[0], 0);
    check_sequence(ball.find_zeros({Kind::J_BALL, 0.5}, 2.5, 19.0, true), frozen::zeros_ball_j[0], 1);
}

TEST_CASE("zero counts agree with an independent long double sign-change scan") {
    const ZeroFinder zf(kAnnulus);
    for (double nu : {0.0, 1.0, 7.5, 25.0, 45.0}) {
        CAPTURE(nu);
        const double a = std::max(nu / 2.0, 0.05), b = nu / 2.0 + 30.0;
        const ZeroSequence s = zf.find_zeros(kF, nu, b);
        CHECK(static_cast<int>(s.zeros.size()) == boost_f_sign_changes(nu, a, b, 0.004));
    }
}

TEST_CASE("zero sequences are increasing and satisfy the lower bounds") {
    for (const ShellDomain dom : {kAnnulus, kShell3, ShellDomain{0.5, 3.0, 4}}) {
        const ZeroFinder zf(dom);
        for (double nu : {0.0, 2.0, 15.5, 60.0, 130.0}) {
            for (const CrossProductKind k : {kF, kG, CrossProductKind{Kind::H_NEUMANN_ULTRA, dom.delta()}}) {
                if (nu < std::fabs(k.delta)) continue;
                CAPTURE(dom.R, dom.d, nu, to_string(k.kind));
                const ZeroSequence s = zf.find_zeros(k, nu, nu / dom.R + 25.0, true);
                REQUIRE(!s.zeros.empty());
                CHECK(s.zeros.front().k == ZeroFinder::first_index(k, nu));
                for (std::size_t i = 1; i < s.zeros.size(); ++i) {
                    CHECK(s.zeros[i].x > s.zeros[i - 1].x);
                    CHECK(s.zeros[i].k == s.zeros[i - 1].k + 1);
                }
                for (const ZeroEntry& e : s.zeros) {
                    CHECK(e.x > nu / dom.R);
                    if (e.k >= 1) CHECK(e.x > std::numbers::pi * (e.k - 0.5) / dom.width());
                }
            }
        }
    }
}

TEST_CASE("Dirichlet and Neumann zeros interlace") {
    const ZeroFinder zf(kAnnulus);
    for (double nu : {3.0, 50.0}) {
        const ZeroSequence f = zf.find_zeros(kF, nu, 60.0);
        const ZeroSequence g = zf.find_zeros(kG, nu, 60.0);
        // g_k (k >= 0) lies below f_{k+1}
        for (std::size_t i = 0; i < f.zeros.size() && i < g.zeros.size(); ++i) CHECK(g.zeros[i].x < f.zeros[i].x);
    }
}

TEST_CASE("brackets hold the zero once nu > V or k > K") {
    const ZeroFinder zf(kShell3);
    for (const CrossProductKind k : {kF, kG, CrossProductKind{Kind::H_NEUMANN_ULTRA, 0.5}}) {
        for (double nu : {45.0, 90.0}) {
            const ZeroSequence s = zf.find_zeros(k, nu, 80.0);
            for (const ZeroEntry& e : s.zeros) {
                const auto [a, b] = zf.predict_bracket(k, nu, e.k);
                CAPTURE(to_string(k.kind), nu, e.k);
                CHECK(a < e.x);
                CHECK(e.x < b);
                CHECK_THAT(zf.locate_zero(k, nu, e.k), WithinRel(e.x, 1e-13));
            }
        }
        // small nu: only the large-k brackets are claimed
        CHECK_THROWS_AS(zf.predict_bracket(k, 5.0, 3), out_of_regime);
        const ZeroSequence s = zf.find_zeros(k, 5.0, 70.0);
        for (const ZeroEntry& e : s.zeros) {
            if (e.k <= zf.knobs().K) continue;
            const auto [a, b] = zf.predict_bracket(k, 5.0, e.k);
            CHECK((a < e.x && e.x < b));
        }
    }
    CHECK_THROWS_AS(zf.predict_bracket(kF, 60.0, 0), domain_error);
}

TEST_CASE("phase windows") {
    CHECK(ZeroFinder::phase_window(kF, 3) == std::pair<double, double>{2.625, 3.125});
    CHECK(ZeroFinder::phase_window(kG, 3) == std::pair<double, double>{2.875, 3.375});
    CHECK(ZeroFinder::phase_window(kG, 0).first == 1.0 / 6.0);
    CHECK(ZeroFinder::phase_window({Kind::JPRIME_BALL, 0.5}, 0).first == 0.125);
    CHECK(ZeroFinder::first_index(kG, 0.0) == 1);
    CHECK(ZeroFinder::first_index({Kind::H_NEUMANN_ULTRA, 0.5}, 0.5) == 1);
    CHECK(ZeroFinder::first_index({Kind::H_NEUMANN_ULTRA, 0.5}, 1.5) == 0);
}

TEST_CASE("the Airy phase shift tracks transition-band zeros") {
    // x_k = F(nu, k - tau) with tau = psi_1(z) beats both constant shifts in the transition band
    const ZeroFinder zf(kShell3);
    const PhaseGeometry pg(kShell3);
    const double nu = 240.0;
    const ZeroSequence s = zf.find_zeros(kF, nu, 1.5 * nu);
    int n = 0;
    double e_psi = 0.0, e_0 = 0.0, e_q = 0.0;
    for (const ZeroEntry& e : s.zeros) {
        if (e.regime != ZeroRegime::transition) continue;
        CHECK(e.tau == psi_phase(1, transition_z(nu, e.x)));
        e_psi = std::max(e_psi, std::fabs(e.x - pg.F(nu, e.k - e.tau)));
        e_0 = std::max(e_0, std::fabs(e.x - pg.F(nu, e.k)));
        e_q = std::max(e_q, std::fabs(e.x - pg.F(nu, e.k - 0.25)));
        ++n;
    }
    REQUIRE(n >= 3);
    CHECK(e_psi < 0.25 * std::min(e_0, e_q));
}

TEST_CASE("uniform approximation error follows its predicted order") {
    const ZeroFinder zf(kShell3);
    for (double nu : {60.0, 120.0}) {
        for (int k = 0; k <= 60; k += 4) {
            const int kk = std::max(k, 1);
            const UniformApprox u = zf.uniform_approx(kF, nu, kk);
            CAPTURE(nu, kk, to_string(u.regime));
            CHECK(std::fabs(u.value - u.zero) <= 2.0 * u.predicted_error);
        }
    }
    CHECK_THROWS_AS(zf.uniform_approx(kF, 10.0, 5), out_of_regime);
}

TEST_CASE("census: every zero inside the circle is real") {
    for (const ShellDomain dom : {kAnnulus, kShell3}) {
        const ZeroFinder zf(dom);
        for (double nu : {0.5, 2.0, 6.0, 10.5}) {
            for (double delta : {0.0, 0.5}) {
                for (int s : {1, 2, 4, 6}) {
                    CAPTURE(dom.d, nu, delta, s);
                    const CensusResult c = zf.census(nu, delta, s);
                    CHECK(c.winding_count == c.real_zero_count);
                }
            }
        }
    }
    const ZeroFinder zf(kAnnulus);
    CHECK_THROWS_AS(zf.census(0.2, 0.5, 2), domain_error);
    CHECK_THROWS_AS(zf.census(2.0, 0.0, 0), domain_error);
    CHECK_THROWS_AS(zf.census(2.0, 0.0, 20), domain_error);
}

TEST_CASE("census counts 2s or 2s + 2 zeros for small orders") {
    const ZeroFinder zf(kShell3);
    for (double nu : {0.5, 1.8}) {
        int prev = -1;
        for (int s = 1; s <= 9; ++s) {
            CAPTURE(nu, s);
            const CensusResult c = zf.census(nu, 0.5, s);
            CHECK(c.winding_count == (nu == 0.5 ? 2 * s : 2 * s + 2));
            if (prev >= 0) CHECK(c.winding_count == prev + 2);
            prev = c.winding_count;
        }
    }
}

TEST_CASE("invalid zero requests") {
    const ZeroFinder ball(ShellDomain{0.0, 1.0, 2});
    CHECK_THROWS_AS(ball.find_zeros(kF, 1.0, 10.0), domain_error);
    const ZeroFinder zf(kShell3);
    CHECK_THROWS_AS(zf.find_zeros({Kind::H_NEUMANN_ULTRA, 0.5}, 0.25, 10.0), domain_error);
    CHECK_THROWS_AS(zf.find_zeros(kF, -1.0, 10.0), domain_error);
    CHECK(zf.find_zeros(kF, 1.0, 0.0).zeros.empty());
}
