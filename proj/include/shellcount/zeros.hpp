#ifndef SHELLCOUNT_ZEROS_HPP
#define SHELLCOUNT_ZEROS_HPP

// Positive zeros of the cross-products, their uniform approximations F(nu, k -+ tau),
// and the argument-principle zero census of ht on |z| = (s+1/2) pi/(R-r).

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "cross.hpp"
#include "errors.hpp"
#include "phase.hpp"

namespace shellcount {

struct ZeroEntry {
    int k = 0;
    double x = 0.0;
    ZeroRegime regime = ZeroRegime::oscillatory;
    double tau = 0.0;
    double residual = 0.0;  // x - F(nu, k -+ tau)
};

struct ZeroSequence {
    CrossProductKind kind;
    double nu = 0.0;
    std::vector<ZeroEntry> zeros;
};

struct UniformApprox {
    double value = 0.0;
    double tau = 0.0;
    double predicted_error = 0.0;
    double zero = 0.0;
    ZeroRegime regime = ZeroRegime::oscillatory;
};

struct CensusResult {
    int s = 0;
    double radius = 0.0;
    int winding_number = 0;   // change of arg ht / 2 pi around the circle
    int winding_count = 0;    // zeros inside: winding_number + pole order at 0
    int real_zero_count = 0;  // 2 * #(positive zeros below radius)
    int samples = 0;
};

namespace detail {

// Brent's method on [a, b] with fa, fb of opposite sign.
inline double brent(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                    double rtol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < 200; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol = 2.0 * 1.1e-16 * std::fabs(b) + 0.5 * rtol * std::fabs(b);
        const double m = 0.5 * (c - b);
        if (std::fabs(m) <= tol || fb == 0.0) return b;
        if (std::fabs(e) >= tol && std::fabs(fa) > std::fabs(fb)) {
            double p, q, s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc, rr = fb / fc;
                p = s * (2.0 * m * qq * (qq - rr) - (b - a) * (rr - 1.0));
                q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            else p = -p;
            if (2.0 * p < std::min(3.0 * m * q - std::fabs(tol * q), std::fabs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::fabs(d) > tol ? d : (m > 0 ? tol : -tol);
        fb = f(b);
    }
    throw numerical_failure("brent: no convergence");
}

}  // namespace detail

class ZeroFinder {
public:
    explicit ZeroFinder(ShellDomain dom, RegimeKnobs knobs = {})
        : dom_(dom), knobs_(knobs), xp_(dom), shell_(dom), ball_(ShellDomain{0.0, dom.R, dom.d}) {}

    const ShellDomain& domain() const { return dom_; }
    const RegimeKnobs& knobs() const { return knobs_; }

    // First index of the family: 1 for Dirichlet kinds, and for Neumann kinds when nu = |delta|.
    static int first_index(CrossProductKind k, double nu) {
        if (k.dirichlet()) return 1;
        const double d = k.kind == Kind::G_NEUMANN_BESSEL ? 0.0 : std::fabs(k.delta);
        return nu > d ? 0 : 1;
    }

    // Window for cal_g at the k-th zero.
    static std::pair<double, double> phase_window(CrossProductKind k, int idx) {
        if (k.dirichlet()) return {idx - 0.375, idx + 0.125};
        if (idx == 0) return {k.is_ball() ? 0.125 : 1.0 / 6.0, 0.375};
        return {idx - 0.125, idx + 0.375};
    }

    std::pair<double, double> predict_bracket(CrossProductKind k, double nu, int idx) const {
        if (idx < first_index(k, nu)) throw domain_error("predict_bracket: index below the family's first index");
        if (nu <= knobs_.V && idx <= knobs_.K)
            throw out_of_regime("predict_bracket: small nu and small k; use the scan");
        return window_x(k, nu, idx);
    }

    ZeroSequence find_zeros(CrossProductKind k, double nu, double x_max, bool verify = false) const {
        check(k, nu);
        ZeroSequence out;
        out.kind = k;
        out.nu = nu;
        const PhaseGeometry& g = geom(k);
        const double R = dom_.R;
        const int k0 = first_index(k, nu);
        if (!(x_max > 0.0)) return out;

        std::vector<double> xs;
        // Fine scan below the first guaranteed window, brackets above.
        int kb = nu > knobs_.V ? k0 : std::max(k0, knobs_.K + 1);
        double scan_end = std::min(x_max, window_x(k, nu, kb).first);
        bool ok = true;
        if (scan_end > scan_start(k, nu)) scan_range(k, nu, scan_start(k, nu), scan_end, xs);
        if (static_cast<int>(xs.size()) != kb - k0 && scan_end < x_max) ok = false;
        if (ok) ok = bracket_range(k, nu, kb, x_max, xs);
        if (!ok) {
            xs.clear();
            scan_range(k, nu, scan_start(k, nu), x_max, xs);
        }
        if (verify) verify_complete(k, nu, x_max, xs);

        for (std::size_t i = 0; i < xs.size(); ++i) {
            ZeroEntry e;
            e.k = k0 + static_cast<int>(i);
            e.x = xs[i];
            e.regime = regime_of(k, nu, e.x);
            e.tau = tau_of(k, nu, e.k, e.x, e.regime);
            const double y = k.dirichlet() ? e.k - e.tau : e.k + e.tau;
            e.residual = (nu == 0.0 && y == 0.0) ? 0.0 : e.x - g.F(nu, y);
            out.zeros.push_back(e);
        }
        if (!k.is_ball() && k.kind != Kind::H_NEUMANN_ULTRA) {
            for (const ZeroEntry& e : out.zeros) {
                if (nu + e.k < 1.0) continue;
                const double lb = std::sqrt(nu * nu + std::pow(std::numbers::pi * (e.k - 0.25), 2)) / R;
                if (!(e.x > lb)) throw numerical_failure("find_zeros: zero below the proven lower bound");
            }
        }
        return out;
    }

    // The idx-th zero alone.
    double locate_zero(CrossProductKind k, double nu, int idx) const {
        check(k, nu);
        const int k0 = first_index(k, nu);
        if (idx < k0) throw domain_error("locate_zero: index below the family's first index");
        if (nu > knobs_.V || idx > knobs_.K) {
            const auto [a, b] = window_x(k, nu, idx);
            const ScaledValue fa = eval(k, nu, a), fb = eval(k, nu, b);
            if (fa.sign() * fb.sign() < 0) return refine(k, nu, a, b, fa, fb);
        }
        const ZeroSequence zs = find_zeros(k, nu, window_x(k, nu, idx + 1).second);
        for (const ZeroEntry& e : zs.zeros)
            if (e.k == idx) return e.x;
        throw numerical_failure("locate_zero: zero not found");
    }

    UniformApprox uniform_approx(CrossProductKind k, double nu, int idx) const {
        using std::numbers::pi;
        check(k, nu);
        if (nu <= knobs_.V && idx <= knobs_.K)
            throw out_of_regime("uniform_approx: small nu and small k (tau = 1/4 by convention there)");
        UniformApprox out;
        out.zero = locate_zero(k, nu, idx);
        out.regime = regime_of(k, nu, out.zero);
        out.tau = tau_of(k, nu, idx, out.zero, out.regime);
        out.value = geom(k).F(nu, k.dirichlet() ? idx - out.tau : idx + out.tau);
        const double kk = std::max(1.0, static_cast<double>(idx));
        double order = 1.0 / (nu + kk);
        if (!k.is_ball() && nu > knobs_.V) {
            switch (out.regime) {
                case ZeroRegime::oscillatory: break;
                case ZeroRegime::pre_transition: {
                    const double gap = idx - shell_.G(dom_.r) / dom_.r * nu;
                    order = gap > 0.0 ? std::sqrt(nu) * std::pow(gap, -1.5) : 1.0;
                    break;
                }
                case ZeroRegime::transition: order = std::pow(nu, -2.0 / 3.0 + 3.0 * knobs_.eps); break;
                case ZeroRegime::evanescent:
                    order = k.dirichlet() ? std::cbrt(nu) * std::pow(kk, -4.0 / 3.0)
                                          : std::cbrt(nu) * std::pow(idx + 1.0, -4.0 / 3.0) +
                                                std::pow(nu, -1.0 / 3.0 - knobs_.eps / 2.0) / std::cbrt(idx + 1.0);
                    break;
            }
        }
        out.predicted_error = order;
        return out;
    }

    // Zero census of ht_{nu,delta} inside |z| = (s+1/2) pi/(R-r).
    CensusResult census(double nu, double delta, int s) const {
        using std::numbers::pi;
        using cplx = std::complex<double>;
        if (s < 1) throw domain_error("census: need s >= 1");
        if (dom_.is_ball()) throw domain_error("census: shell only");
        if (nu < std::fabs(delta)) throw domain_error("census: need nu >= |delta|");
        CensusResult out;
        out.s = s;
        out.radius = (s + 0.5) * pi / dom_.width();
        if (out.radius > kComplexRadiusCap) throw domain_error("census: radius exceeds 50");
        auto arg_at = [&](double th) {
            const ComplexSeriesValue v = xp_.eval_complex_htilde(nu, delta, std::polar(out.radius, th));
            return std::arg(cplx(v.re, v.im));
        };
        constexpr int kMaxSamples = 1 << 16;
        const int n0 = 64;
        std::vector<std::pair<double, double>> pts;  // (theta, arg)
        for (int i = 0; i <= n0; ++i) {
            const double th = 2.0 * pi * i / n0;
            pts.push_back({th, i == n0 ? pts.front().second : arg_at(th)});
        }
        double total = 0.0;
        int samples = n0;
        std::vector<std::pair<double, double>> stack;
        for (int i = 0; i < n0; ++i) {
            // refine each arc until every arg step is below pi/4
            stack.assign({pts[i + 1], pts[i]});
            while (stack.size() > 1) {
                const auto b = stack[stack.size() - 2];
                const auto a = stack.back();
                double da = b.second - a.second;
                da -= 2.0 * pi * std::round(da / (2.0 * pi));
                if (std::fabs(da) < 0.25 * pi) {
                    total += da;
                    stack.pop_back();
                    continue;
                }
                if (++samples > kMaxSamples) throw numerical_failure("census: phase step bound violated at 2^16 samples");
                const double tm = 0.5 * (a.first + b.first);
                stack.back() = {tm, arg_at(tm)};
                stack.push_back(a);
            }
        }
        out.samples = samples;
        out.winding_number = static_cast<int>(std::lround(total / (2.0 * pi)));
        const bool regular = std::fabs(nu - std::fabs(delta)) < 1e-14;
        out.winding_count = out.winding_number + (regular ? 0 : 2);
        const ZeroSequence zs = find_zeros({Kind::H_NEUMANN_ULTRA, delta}, nu, out.radius);
        out.real_zero_count = 2 * static_cast<int>(zs.zeros.size());
        return out;
    }

    ZeroRegime regime_of(CrossProductKind k, double nu, double x) const {
        if (k.is_ball()) {
            const double Rx = dom_.R * x;
            return Rx >= (1.0 + knobs_.c) * nu ? ZeroRegime::oscillatory : ZeroRegime::pre_transition;
        }
        return classify_regime(nu, dom_.r * x, knobs_);
    }

    ScaledValue eval(CrossProductKind k, double nu, double x) const { return xp_.eval_scaled(k, nu, x); }

private:
    void check(CrossProductKind k, double nu) const {
        if (!(nu >= 0.0)) throw domain_error("zeros: nu must be nonnegative");
        if (!k.is_ball() && dom_.is_ball()) throw domain_error("zeros: shell kind on a ball");
        if ((k.kind == Kind::H_NEUMANN_ULTRA || k.kind == Kind::JPRIME_BALL) && nu < std::fabs(k.delta))
            throw domain_error("zeros: need nu >= |delta|");
    }

    const PhaseGeometry& geom(CrossProductKind k) const { return k.is_ball() ? ball_ : shell_; }

    std::pair<double, double> window_x(CrossProductKind k, double nu, int idx) const {
        const auto [lo, hi] = phase_window(k, idx);
        const PhaseGeometry& g = geom(k);
        return {g.F(nu, std::max(lo, 0.0)), g.F(nu, hi)};
    }

    double tau_of(CrossProductKind k, double nu, int idx, double x, ZeroRegime reg) const {
        if (k.is_ball()) return 0.25;
        if (nu <= knobs_.V) return idx > knobs_.K ? 0.0 : 0.25;
        switch (reg) {
            case ZeroRegime::oscillatory:
            case ZeroRegime::pre_transition: return 0.0;
            case ZeroRegime::transition: return psi_phase(k.dirichlet() ? 1 : 2, transition_z(nu, dom_.r * x));
            case ZeroRegime::evanescent: return 0.25;
        }
        return 0.25;
    }

    double scan_start(CrossProductKind k, double nu) const {
        const double R = dom_.R;
        if (k.kind == Kind::H_NEUMANN_ULTRA || k.kind == Kind::JPRIME_BALL)
            return nu >= 2.0 ? 0.5 * nu / R : 1e-3 / R;
        return nu > 0.0 ? nu / R : 1e-3 / R;
    }

    double step_cap() const {
        const double w = geom_width();
        return knobs_.gap_floor * std::numbers::pi / w / 8.0;
    }
    double geom_width() const { return dom_.is_ball() ? dom_.R : dom_.width(); }

    // Sign-change scan on [a, b]: 1/32 in cal_g above nu/R (and at most gamma_1/8 in x),
    // 16 samples below nu/R. Appends the refined roots.
    void scan_range(CrossProductKind k, double nu, double a, double b, std::vector<double>& xs) const {
        const PhaseGeometry& g = geom(k);
        const double turn = nu / dom_.R;
        const double cap = step_cap();
        std::vector<double> grid;
        if (a < turn) {
            const double e = std::min(b, turn);
            for (int i = 0; i < 16; ++i) grid.push_back(a + (e - a) * i / 16.0);
            a = e;
        }
        if (b > a) {
            double x = a;
            double y = nu > 0.0 ? g.cal_g(nu, std::max(x, turn)) : 0.0;
            while (x < b) {
                grid.push_back(x);
                y += 1.0 / 32.0;
                double xn = nu > 0.0 ? g.F(nu, y) : x + 1.0;
                xn = std::min(xn, x + cap);
                if (nu > 0.0) y = g.cal_g(nu, xn);
                x = xn;
            }
        }
        grid.push_back(b);
        ScaledValue fp = eval(k, nu, grid[0]);
        for (std::size_t i = 1; i < grid.size(); ++i) {
            const ScaledValue fc = eval(k, nu, grid[i]);
            if (fp.sign() * fc.sign() < 0) xs.push_back(refine(k, nu, grid[i - 1], grid[i], fp, fc));
            else if (fc.sign() == 0) xs.push_back(grid[i]);
            fp = fc;
        }
    }

    // Windows idx = kb, kb+1, ... below x_max; false on any sign inconsistency.
    bool bracket_range(CrossProductKind k, double nu, int kb, double x_max, std::vector<double>& xs) const {
        std::vector<double> found;
        int prev_sign = 0;
        for (int idx = kb;; ++idx) {
            const auto [a, b] = window_x(k, nu, idx);
            if (a >= x_max) break;
            const ScaledValue fa = eval(k, nu, a), fb = eval(k, nu, b);
            if (fa.sign() * fb.sign() >= 0) return false;
            if (prev_sign != 0 && fa.sign() != prev_sign) return false;  // zero in the gap
            prev_sign = fb.sign();
            const double x = refine(k, nu, a, b, fa, fb);
            if (x > x_max) break;
            found.push_back(x);
        }
        xs.insert(xs.end(), found.begin(), found.end());
        return true;
    }

    double refine(CrossProductKind k, double nu, double a, double b, const ScaledValue& fa,
                  const ScaledValue& fb) const {
        const double lg = fa.log_scale;
        auto f = [&](double x) {
            const ScaledValue v = eval(k, nu, x);
            return v.mantissa * std::exp(std::clamp(v.log_scale - lg, -700.0, 700.0));
        };
        const double va = fa.mantissa, vb = fb.at_scale(lg);
        const double x = detail::brent(f, a, b, va, std::isfinite(vb) ? vb : (fb.sign() * 1e300), 1e-14);
        // simplicity alarm: slope at the root against the bracket secant
        const double h = 1e-6 * std::max(x, 1e-3);
        const double slope = (f(x + h) - f(x - h)) / (2.0 * h);
        const double scale = std::max(std::fabs(va), std::fabs(vb)) / (b - a);
        if (std::isfinite(scale) && std::fabs(slope) < 1e-6 * scale)
            throw numerical_failure("find_zeros: simplicity alarm (vanishing slope at a root)");
        return x;
    }

    // Fine scan at gamma_1/4 resolution; every root must match one found zero.
    void verify_complete(CrossProductKind k, double nu, double x_max, const std::vector<double>& xs) const {
        std::vector<double> fine;
        scan_range(k, nu, scan_start(k, nu), x_max, fine);
        for (double x : fine) {
            bool hit = false;
            for (double y : xs) hit = hit || std::fabs(x - y) <= 1e-9 * std::max(1.0, y);
            if (!hit) throw numerical_failure("find_zeros: missed zero outside all brackets");
        }
        if (fine.size() != xs.size()) throw numerical_failure("find_zeros: zero count mismatch against the fine scan");
    }

    ShellDomain dom_;
    RegimeKnobs knobs_;
    CrossProducts xp_;
    PhaseGeometry shell_;
    PhaseGeometry ball_;
};

}  // namespace shellcount

#endif
