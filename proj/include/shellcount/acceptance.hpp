#ifndef SHELLCOUNT_ACCEPTANCE_HPP
#define SHELLCOUNT_ACCEPTANCE_HPP

// The ten acceptance checks, shared by the CLI and the ctest binary.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "lattice.hpp"
#include "spectrum.hpp"
#include "zeros.hpp"

namespace shellcount {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;
    std::string detail;
    std::map<std::string, double> metrics;
};

struct AcceptanceOptions {
    RegimeKnobs knobs;
    std::uint64_t seed = 20240607;
    std::set<std::string> only;  // empty: all
    int threads = 1;
};

namespace acceptance {

inline std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

inline CriterionResult theta() {
    CriterionResult c;
    const auto t0 = std::chrono::steady_clock::now();
    const ThetaStar t = solve_theta_star();
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.metrics["theta_star"] = t.value;
    c.metrics["abs_error"] = std::fabs(t.value - 0.3144831759741);
    c.metrics["residual"] = t.residual;
    c.passed = c.metrics["abs_error"] <= 1e-10 && std::fabs(t.residual) < 1e-12;
    c.detail = "theta* = " + fmt(t.value);
    return c;
}

inline CriterionResult special_functions() {
    using std::numbers::pi;
    CriterionResult c;
    double wr = 0.0, rec = 0.0, airy = 0.0;
    for (double nu : {0.0, 0.5, 1.0, 2.5, 10.0, 40.0}) {
        for (int i = 0; i < 600; ++i) {
            const double x = 0.1 * std::pow(2000.0, i / 599.0);
            const BesselQuad q = bessel_quad(nu, x);
            const double scale = std::max(1.0, std::fabs(q.j * q.yp) + std::fabs(q.jp * q.y));
            wr = std::max(wr, std::fabs(q.j * q.yp - q.jp * q.y - 2.0 / (pi * x)) / scale);
            // J_{nu-1} for nu < 1 by reflection J_{-a} = cos(a pi) J_a - sin(a pi) Y_a
            double jm;
            if (nu >= 1.0) {
                jm = bessel_quad(nu - 1.0, x).j;
            } else {
                const BesselQuad m = bessel_quad(1.0 - nu, x);
                jm = std::cos((1.0 - nu) * pi) * m.j - std::sin((1.0 - nu) * pi) * m.y;
            }
            const double jp1 = bessel_quad(nu + 1.0, x).j;
            const double big = std::max({std::fabs(jm), std::fabs(jp1), std::fabs(2.0 * nu / x * q.j)});
            rec = std::max(rec, std::fabs(jm + jp1 - 2.0 * nu / x * q.j) / big);
        }
    }
    for (int i = 0; i <= 4000; ++i) {
        const double t = -60.0 + 80.0 * i / 4000.0;
        const AiryQuad a = airy_quad(t);
        airy = std::max(airy, std::fabs(a.ai * a.bip - a.aip * a.bi - 1.0 / pi));
    }
    c.metrics["bessel_wronskian"] = wr;
    c.metrics["recurrence"] = rec;
    c.metrics["airy_wronskian"] = airy;
    c.passed = wr < 1e-10 && rec < 1e-9 && airy <= 1e-12;
    c.detail = "max residuals: Wronskian " + fmt(wr) + ", recurrence " + fmt(rec) + ", Airy " + fmt(airy);
    return c;
}

inline CriterionResult census(const RegimeKnobs& knobs) {
    CriterionResult c;
    const ZeroFinder zf(ShellDomain{1.0, 2.0, 2}, knobs);
    bool ok = true;
    std::string d;
    for (int s : {2, 4, 6}) {
        for (double nu : {0.0, 1.3}) {
            const CensusResult r = zf.census(nu, 0.0, s);
            const int expect = nu == 0.0 ? 2 * s : 2 * s + 2;
            ok = ok && r.winding_count == expect && r.real_zero_count == expect;
            d += "s=" + std::to_string(s) + ",nu=" + fmt(nu) + ":" + std::to_string(r.winding_count) + "/" +
                 std::to_string(r.real_zero_count) + " ";
        }
    }
    c.passed = ok;
    c.detail = "winding/real counts " + d;
    return c;
}

inline CriterionResult brackets(const RegimeKnobs& knobs) {
    CriterionResult c;
    long long checks = 0, failures = 0;
    std::string first;
    auto fail = [&](const std::string& what) {
        if (failures++ == 0) first = what;
    };
    for (int dim : {2, 3}) {
        const ShellDomain dom{1.0, 2.0, dim};
        const double delta = dom.delta(), R = dom.R, w = dom.width();
        const ZeroFinder zf(dom, knobs);
        const PhaseGeometry g(dom);
        const CrossProductKind H{Kind::H_NEUMANN_ULTRA, delta}, Gk{Kind::G_NEUMANN_BESSEL, 0.0},
            F{Kind::F_DIRICHLET, 0.0};
        for (double nu : {50.0, 120.0}) {
            auto upto = [&](CrossProductKind k, int kmax) {
                const double xm = zf.predict_bracket(k, nu, kmax).second;
                ZeroSequence s = zf.find_zeros(k, nu, xm, true);
                std::vector<ZeroEntry> out;
                for (const ZeroEntry& e : s.zeros)
                    if (e.k <= kmax) out.push_back(e);
                if (out.empty() || out.back().k != kmax) fail("missing zeros for " + std::string(to_string(k.kind)));
                return out;
            };
            const auto hz = upto(H, 80), gz = upto(Gk, 80), fz = upto(F, 80);
            const std::string tag = " d=" + std::to_string(dim) + " nu=" + fmt(nu);
            for (const ZeroEntry& e : hz) {
                const double cg = g.cal_g(nu, e.x);
                ++checks;
                if (!(cg > e.k - 0.125 && cg < e.k + 0.375)) fail("H window k=" + std::to_string(e.k) + tag);
                ++checks;
                if (!(e.x > nu / R)) fail("H x > nu/R k=" + std::to_string(e.k) + tag);
                ++checks;
                if (!(e.x > std::numbers::pi * (e.k - 0.5) / w)) fail("H pi(k-1/2)/(R-r) k=" + std::to_string(e.k) + tag);
                if (e.k >= 2) {
                    ++checks;
                    const double lb = std::hypot(nu, std::numbers::pi * (e.k - 1.25)) / R;
                    if (!(e.x > lb)) fail("H lower bound k=" + std::to_string(e.k) + tag);
                }
                if (e.k >= 1) {
                    ++checks;
                    bool found = false;
                    for (const ZeroEntry& p : gz)
                        if (p.k == e.k - 1) {
                            found = true;
                            if (!(e.x > p.x)) fail("interlacing k=" + std::to_string(e.k) + tag);
                        }
                    if (!found) fail("interlacing partner missing k=" + std::to_string(e.k) + tag);
                }
            }
            for (const ZeroEntry& e : gz) {
                const double cg = g.cal_g(nu, e.x);
                ++checks;
                if (!(cg > e.k - 0.125 && cg < e.k + 0.375)) fail("G window k=" + std::to_string(e.k) + tag);
                if (e.k >= 1) {
                    ++checks;
                    if (!(e.x > std::hypot(nu, std::numbers::pi * (e.k - 0.25)) / R))
                        fail("G lower bound k=" + std::to_string(e.k) + tag);
                }
            }
            for (const ZeroEntry& e : fz) {
                const double cg = g.cal_g(nu, e.x);
                checks += 2;
                if (!(cg > e.k - 0.375 && cg < e.k + 0.125)) fail("F window k=" + std::to_string(e.k) + tag);
                if (!(e.x > std::hypot(nu, std::numbers::pi * (e.k - 0.25)) / R))
                    fail("F lower bound k=" + std::to_string(e.k) + tag);
            }
        }
        // Wherever the knobs declare the window bracket valid (nu > V or k > K), it must hold.
        for (double nu = std::fabs(delta) + 0.5; nu <= 60.0; nu += 0.5) {
            for (CrossProductKind k : {H, Gk, F}) {
                const ZeroSequence s = zf.find_zeros(k, nu, 45.0);
                for (const ZeroEntry& e : s.zeros) {
                    std::pair<double, double> br;
                    try {
                        br = zf.predict_bracket(k, nu, e.k);
                    } catch (const out_of_regime&) {
                        continue;
                    }
                    ++checks;
                    if (!(e.x > br.first && e.x < br.second))
                        fail(std::string("bracket ") + to_string(k.kind) + " k=" + std::to_string(e.k) +
                             " nu=" + fmt(nu) + " d=" + std::to_string(dim));
                }
            }
        }
    }
    c.metrics["checks"] = static_cast<double>(checks);
    c.metrics["failures"] = static_cast<double>(failures);
    c.passed = failures == 0;
    c.detail = std::to_string(checks) + " checks, " + std::to_string(failures) + " failures" +
               (failures ? " (first: " + first + ")" : "");
    return c;
}

// max over oscillatory zeros of |x - F(nu, k -+ tau)| (nu + k), zeros with x <= 6 nu
inline double residual_constant(const ZeroFinder& zf, CrossProductKind k, double nu) {
    double m = 0.0;
    for (const ZeroEntry& e : zf.find_zeros(k, nu, 6.0 * nu).zeros)
        if (e.regime == ZeroRegime::oscillatory) m = std::max(m, std::fabs(e.residual) * (nu + e.k));
    return m;
}

inline CriterionResult uniform(const RegimeKnobs& knobs) {
    CriterionResult c;
    const ShellDomain dom{1.0, 2.0, 3};
    const ZeroFinder zf(dom, knobs);
    bool ok = true;
    for (CrossProductKind k : {CrossProductKind{Kind::F_DIRICHLET, 0.0}, CrossProductKind{Kind::H_NEUMANN_ULTRA, 0.5}}) {
        const double c100 = residual_constant(zf, k, 100.0), c200 = residual_constant(zf, k, 200.0);
        const std::string key = k.kind == Kind::F_DIRICHLET ? "F" : "H";
        c.metrics[key + "_C100"] = c100;
        c.metrics[key + "_C200"] = c200;
        ok = ok && c100 > 0.0 && c200 <= 1.2 * c100;
        c.detail += key + ": C(100)=" + fmt(c100) + " C(200)=" + fmt(c200) + " ratio " + fmt(c200 / c100) + "; ";
    }
    c.passed = ok;
    return c;
}

inline CriterionResult ball(const RegimeKnobs& knobs) {
    using std::numbers::pi;
    CriterionResult c;
    const double nu = 3.5, delta = 0.5;
    const ZeroFinder zf(ShellDomain{0.0, 1.0, 3}, knobs);
    const ZeroSequence s = zf.find_zeros(CrossProductKind{Kind::JPRIME_BALL, delta}, nu, pi * (202.0 + nu / 2.0));
    double lo = 0.0, hi = 0.0;
    int seen = 0;
    for (const ZeroEntry& e : s.zeros) {
        if (e.k < 20 || e.k > 200) continue;
        ++seen;
        const double v = std::fabs(e.x - pi * (e.k + 0.5 * nu + 0.25)) * e.k;
        (e.k <= 100 ? lo : hi) = std::max(e.k <= 100 ? lo : hi, v);
    }
    c.metrics["max_k20_100"] = lo;
    c.metrics["max_k101_200"] = hi;
    c.passed = seen == 181 && hi <= 1.2 * lo;
    c.detail = "max |a' - pi(k + nu/2 + 1/4)| k: " + fmt(lo) + " on [20,100], " + fmt(hi) + " on [101,200]";
    return c;
}

inline CriterionResult decomposition(std::uint64_t seed) {
    CriterionResult c;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int mismatches = 0, rational = 0;
    std::string first;
    for (int i = 0; i < 50; ++i) {
        const int d = 2 + i % 3;
        const int shape = (i / 3) % 3;
        const ShellDomain dom = shape == 0   ? ShellDomain{1.0, 2.0, d}
                                : shape == 1 ? ShellDomain{0.3 + 0.6 * u(rng), 1.6 + 0.8 * u(rng), d}
                                             : ShellDomain{0.0, 0.8 + 1.0 * u(rng), d};
        const double mu = 5.0 + 95.0 * u(rng);
        const double cs = u(rng);
        const int l = static_cast<int>(u(rng) * 0.9 * dom.R * mu);
        const long long direct = q_count_direct(dom, mu, cs, l);
        std::vector<QFormula> forms{q_count_formula(dom, mu, cs, l)};
        if (shape == 0) {
            forms.push_back(q_count_formula(dom, mu, cs, l, RationalSlope{1, 3}));
            ++rational;
        }
        for (const QFormula& f : forms)
            if (f.count != direct) {
                if (mismatches++ == 0)
                    first = "d=" + std::to_string(d) + " mu=" + fmt(mu) + " c=" + fmt(cs) + " l=" + std::to_string(l) +
                            " " + f.path;
            }
    }
    c.metrics["mismatches"] = mismatches;
    c.metrics["rational_configs"] = rational;
    c.passed = mismatches == 0;
    c.detail = "50 configurations (" + std::to_string(rational) + " also on the rational path), " +
               std::to_string(mismatches) + " mismatches" + (mismatches ? " (first: " + first + ")" : "");
    return c;
}

inline std::vector<double> log_grid(double a, double b, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    return g;
}

inline CriterionResult weyl(const RegimeKnobs& knobs, int threads) {
    CriterionResult c;
    bool ok = true;
    struct Case {
        ShellDomain dom;
        double lo, hi, bound;
        std::string name;
    };
    const std::vector<Case> cases{{{0.0, 1.0, 2}, 50.0, 400.0, 0.70, "disk"},
                                  {{1.0, 2.0, 2}, 50.0, 400.0, 0.70, "annulus"},
                                  {{1.0, 2.0, 3}, 20.0, 120.0, 1.70, "shell3"}};
    double gamma_err = 0.0;
    for (const Case& cs : cases) {
        for (BC bc : {BC::Dirichlet, BC::Neumann}) {
            for (double mu : {1.0, 7.5, 100.0}) {
                const WeylTerms a = weyl_two_term(cs.dom, bc, mu), b = weyl_geometric(cs.dom, bc, mu);
                gamma_err = std::max({gamma_err, std::fabs(a.main_d - b.main_d) / std::fabs(b.main_d),
                                      std::fabs(a.main_b - b.main_b) / std::fabs(b.main_b)});
            }
            const SpectrumTable t(cs.dom, bc, cs.hi, knobs, threads);
            const ScalingFit f = fit_envelope(t.remainder_series(log_grid(cs.lo, cs.hi, 4000)), 20);
            const std::string key = cs.name + "_" + to_string(bc);
            c.metrics[key + "_exponent"] = f.exponent;
            ok = ok && f.exponent <= cs.bound;
            c.detail += key + " " + fmt(f.exponent) + " (<= " + fmt(cs.bound) + "); ";
        }
    }
    c.metrics["gamma_identity_rel_error"] = gamma_err;
    ok = ok && gamma_err <= 1e-12;
    c.detail += "main-term identity error " + fmt(gamma_err);
    c.passed = ok;
    return c;
}

struct SandwichFit {
    double C = 0.0, Cp = 0.0;
};

// Smallest C' making |N_l - P_l| <= P_l(mu + h) - P_l(mu - h) + C' mu^0.6, h = C mu^-0.4, on the grid.
inline double sandwich_need(const SpectrumTable& t, double C, const std::vector<double>& mus, const std::vector<int>& ls,
                            double* mean_width = nullptr) {
    double need = 0.0, width = 0.0;
    for (int l : ls)
        for (double mu : mus) {
            const double h = C * std::pow(mu, -0.4);
            const double lhs = std::fabs(static_cast<double>(t.count_l(mu, l) - t.p_count_l(mu, l)));
            const double dp = static_cast<double>(t.p_count_l(mu + h, l) - t.p_count_l(mu - h, l));
            need = std::max(need, (lhs - dp) / std::pow(mu, 0.6));
            width += dp;
        }
    if (mean_width) *mean_width = width / (mus.size() * ls.size());
    return need;
}

// C from a fixed grid, the one with the narrowest sandwich on the training range; C' the smallest valid there.
inline SandwichFit calibrate_sandwich(const SpectrumTable& t, const std::vector<double>& train, const std::vector<int>& ls) {
    SandwichFit best;
    double best_width = INFINITY;
    for (double C : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        double w;
        const double cp = sandwich_need(t, C, train, ls, &w);
        double total = w;
        for (double mu : train) total += cp * std::pow(mu, 0.6) / train.size();
        if (total < best_width) {
            best_width = total;
            best = {C, cp};
        }
    }
    return best;
}

inline CriterionResult sandwich(const RegimeKnobs& knobs, int threads) {
    CriterionResult c;
    std::vector<double> train, test;
    for (int i = 0; i <= 30; ++i) train.push_back(30.0 + i);
    for (int i = 0; i < 20; ++i) test.push_back(60.0 + 90.0 * i / 19.0);
    const std::vector<int> ls{0, 1, 5, 20};
    bool ok = true;
    for (int d : {2, 3}) {
        for (BC bc : {BC::Dirichlet, BC::Neumann}) {
            const SpectrumTable t(ShellDomain{1.0, 2.0, d}, bc, 160.0, knobs, threads);
            const SandwichFit f = calibrate_sandwich(t, train, ls);
            const double need = sandwich_need(t, f.C, test, ls);
            const std::string key = "d" + std::to_string(d) + "_" + to_string(bc);
            c.metrics[key + "_C"] = f.C;
            c.metrics[key + "_Cprime"] = f.Cp;
            c.metrics[key + "_test_need"] = need;
            ok = ok && need <= f.Cp;
            c.detail += key + ": C=" + fmt(f.C) + " C'=" + fmt(f.Cp) + " test needs " + fmt(need) + "; ";
        }
    }
    c.passed = ok;
    return c;
}

inline CriterionResult sawtooth_suite(std::uint64_t seed) {
    CriterionResult c;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    for (int q : {2, 3, 5, 7, 11})
        for (int i = 0; i < 100; ++i) worst = std::max(worst, std::fabs(complete_sum_defect(u(rng), q)));
    const double T = 1e6;
    const long long M = 1000;
    const AnnulusHPhase phase(ShellDomain{10.0, 20.0, 2}, T, M, 0.25);
    const SawtoothSum s = rounding_error_sum(T, M, 2 * M - 1, phase, "annulus-H");
    c.metrics["complete_sum_defect"] = worst;
    c.metrics["psi_sum"] = s.value;
    c.metrics["bound"] = std::pow(T, 0.35);
    c.metrics["in_range"] = s.in_range;
    c.passed = worst <= 1e-14 && std::fabs(s.value) <= std::pow(T, 0.35) && s.in_range;
    c.detail = "complete-sum defect " + fmt(worst) + "; S(1e6, 1e3) = " + fmt(s.value) + " vs T^0.35 = " +
               fmt(std::pow(T, 0.35));
    return c;
}

}  // namespace acceptance

struct CriterionSpec {
    int id;
    const char* name;
    double limit_seconds;
};

inline const std::vector<CriterionSpec>& criterion_specs() {
    static const std::vector<CriterionSpec> v{
        {1, "theta", 1e-3},      {2, "special", 10.0},       {3, "census", 60.0},   {4, "brackets", 120.0},
        {5, "uniform", 120.0},   {6, "ball", 30.0},          {7, "decomposition", 120.0},
        {8, "weyl", 1200.0},     {9, "sandwich", 600.0},     {10, "sawtooth", 60.0}};
    return v;
}

// Runs the selected criteria; a criterion passes only within its time limit.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
    std::vector<CriterionResult> out;
    for (const CriterionSpec& s : criterion_specs()) {
        if (!opt.only.empty() && !opt.only.count(s.name) && !opt.only.count(std::to_string(s.id))) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            switch (s.id) {
                case 1: r = acceptance::theta(); break;
                case 2: r = acceptance::special_functions(); break;
                case 3: r = acceptance::census(opt.knobs); break;
                case 4: r = acceptance::brackets(opt.knobs); break;
                case 5: r = acceptance::uniform(opt.knobs); break;
                case 6: r = acceptance::ball(opt.knobs); break;
                case 7: r = acceptance::decomposition(opt.seed); break;
                case 8: r = acceptance::weyl(opt.knobs, opt.threads); break;
                case 9: r = acceptance::sandwich(opt.knobs, opt.threads); break;
                case 10: r = acceptance::sawtooth_suite(opt.seed); break;
            }
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.id = s.id;
        r.name = s.name;
        if (s.id != 1) r.seconds = elapsed;  // theta times the solve alone
        r.limit_seconds = s.limit_seconds;
        if (r.seconds >= s.limit_seconds) {
            r.passed = false;
            r.detail += " [time limit exceeded]";
        }
        out.push_back(r);
        if (on_result) on_result(r);
    }
    return out;
}

}  // namespace shellcount

#endif
