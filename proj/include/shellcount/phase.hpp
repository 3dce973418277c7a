#ifndef SHELLCOUNT_PHASE_HPP
#define SHELLCOUNT_PHASE_HPP

// Phase functions of a ball or spherical shell: g, G, the scaled phase cal_g,
// the inverse H, Minkowski functionals, the Airy phase corrections psi_1/psi_2,
// the zeta map of the uniform expansions, and the chord function T.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "errors.hpp"

namespace shellcount {

struct ShellDomain {
    double r = 0.0;  // inner radius; 0 is the ball
    double R = 1.0;
    int d = 2;

    double delta() const { return 0.5 * d - 1.0; }
    bool is_ball() const { return r == 0.0; }
    double width() const { return R - r; }

    void validate() const {
        if (!(r >= 0.0) || !(R > r) || !std::isfinite(R)) throw domain_error("domain: need 0 <= r < R");
        if (d < 2) throw domain_error("domain: need d >= 2");
    }
};

// arccos(r/R)/pi = a/q, asserted by the caller.
struct RationalSlope {
    long a = 0;
    long q = 1;
};

inline double g_fn(double x) {
    using std::numbers::pi;
    if (x < 0.0 && x > -1e-14) x = 0.0;
    if (x > 1.0 && x < 1.0 + 1e-14) x = 1.0;
    if (!(x >= 0.0 && x <= 1.0)) throw domain_error("g: argument outside [0,1]");
    return (std::sqrt((1.0 - x) * (1.0 + x)) - x * std::acos(x)) / pi;
}

inline double g_prime(double x) { return -std::acos(std::clamp(x, -1.0, 1.0)) / std::numbers::pi; }

// zeta(z) of the uniform expansions: (2/3)(-zeta)^{3/2} = sqrt(z^2-1) - arccos(1/z) for z >= 1,
// (2/3) zeta^{3/2} = log((1+sqrt(1-z^2))/z) - sqrt(1-z^2) for 0 < z <= 1.
inline double zeta_map(double z) {
    if (!(z > 0.0)) throw domain_error("zeta_map: z must be positive");
    if (z == 1.0) return 0.0;
    auto odd_tail = [](double w, bool alternating) {
        // w - arctan w (alternating) or atanh w - w, summed from the w^3 term
        const double w2 = w * w;
        double term = w * w2, s = 0.0;
        for (int k = 3; k < 200; k += 2) {
            s += term / k;
            term *= alternating ? -w2 : w2;
            if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
        }
        return s;
    };
    if (z > 1.0) {
        const double w = std::sqrt((z - 1.0) * (z + 1.0));
        const double phi = w < 0.1 ? odd_tail(w, true) : w - std::atan(w);
        return -std::pow(1.5 * phi, 2.0 / 3.0);
    }
    const double v = std::sqrt((1.0 - z) * (1.0 + z));
    const double phi = v < 0.1 ? odd_tail(v, false) : std::atanh(v) - v;
    return std::pow(1.5 * phi, 2.0 / 3.0);
}

namespace detail {

// Zeros of Ai'(-x) (which = 2) or Ai(-x) (which = 1), located by bisection inside
// ((3pi/2 (k - c0))^{2/3}, (3pi/2 (k - c1))^{2/3}).
inline std::vector<double> airy_zero_table(int which, int count) {
    using std::numbers::pi;
    const double c0 = which == 2 ? 0.8 : 0.3;
    const double c1 = which == 2 ? 0.7 : 0.2;
    auto f = [which](double x) {
        const AiryQuad q = airy_quad(-x);
        return which == 2 ? q.aip : q.ai;
    };
    std::vector<double> out;
    out.reserve(count);
    for (int k = 1; k <= count; ++k) {
        double lo = std::pow(1.5 * pi * (k - c0), 2.0 / 3.0);
        double hi = std::pow(1.5 * pi * (k - c1), 2.0 / 3.0);
        double flo = f(lo);
        if (flo * f(hi) > 0.0) throw numerical_failure("airy zero bracket failed");
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = f(mid);
            if (fm == 0.0) { lo = hi = mid; break; }
            if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
        }
        out.push_back(0.5 * (lo + hi));
    }
    return out;
}

inline const std::vector<double>& airy_zeros(int which) {
    static const std::vector<double> t2 = airy_zero_table(2, 140);
    static const std::vector<double> t1 = airy_zero_table(1, 140);
    return which == 2 ? t2 : t1;
}

// Continuous branch A(x) = -(m-2) pi + arctan(N/D)(-x) on (z_{m-1}, z_m), where
// (N, D) = (Bi', Ai') for which = 2 and (Bi, Ai) for which = 1, z_m the zeros of D(-x).
inline double airy_branch(int which, double x) {
    using std::numbers::pi;
    const AiryQuad q = airy_quad(-x);
    const double num = which == 2 ? q.bip : q.bi;
    const double den = which == 2 ? q.aip : q.ai;
    int m = 1;
    if (x > 0.0) {
        const auto& zs = airy_zeros(which);
        if (x > zs.back()) throw domain_error("psi_phase: argument beyond zero table");
        m = 1 + static_cast<int>(std::upper_bound(zs.begin(), zs.end(), x) - zs.begin());
        // D(-x) has sign (-1)^m (which = 2) or (-1)^{m-1} (which = 1) on the m-th interval;
        // repair an off-by-one at a table zero using the computed sign.
        const int expect = ((which == 2 ? m : m - 1) % 2 == 0) ? 1 : -1;
        if (den != 0.0 && (den > 0.0 ? 1 : -1) != expect) {
            const double zl = m >= 2 ? zs[m - 2] : -1e300;
            const double zr = zs[m - 1];
            m += (x - zl < zr - x) ? -1 : 1;
        }
    }
    if (den == 0.0) return -(m - 2) * pi - 0.5 * pi;
    return -(m - 2) * pi + std::atan(num / den);
}

}  // namespace detail

// psi_1 (which = 1, Dirichlet) and psi_2 (which = 2, Neumann) phase corrections.
inline double psi_phase(int which, double z) {
    using std::numbers::pi;
    if (which != 1 && which != 2) throw domain_error("psi_phase: which must be 1 or 2");
    if (z > 50.0) return 0.0;
    if (z < -50.0) return 0.25;
    const double beta = detail::airy_branch(which, std::cbrt(2.0) * z) / pi;
    const double lin = z > 0.0 ? 2.0 * std::numbers::sqrt2 / (3.0 * pi) * z * std::sqrt(z) : 0.0;
    if (which == 2) return -beta - lin + 0.75;
    return beta + lin - 1.25;
}

// 1/4 - psi_i(z) for z <= 0, without the cancellation (it decays like exp(-c|z|^{3/2})).
inline double psi_phase_complement(int which, double z) {
    if (which != 1 && which != 2) throw domain_error("psi_phase_complement: which must be 1 or 2");
    if (z > 0.0) return 0.25 - psi_phase(which, z);
    const AiryQuad q = airy_quad(-std::cbrt(2.0) * z);
    const double v = which == 2 ? std::atan(-q.aip / q.bip) : std::atan(q.ai / q.bi);
    return v / std::numbers::pi;
}

class PhaseGeometry {
public:
    explicit PhaseGeometry(ShellDomain dom, std::optional<RationalSlope> slope = std::nullopt)
        : dom_(dom), slope_(slope) {
        dom_.validate();
        if (slope_) {
            if (slope_->q <= 0 || slope_->a <= 0 || dom_.is_ball())
                throw domain_error("rational slope: need a, q > 0 and a shell");
            const double t = std::acos(dom_.r / dom_.R) / std::numbers::pi;
            if (std::fabs(t - static_cast<double>(slope_->a) / slope_->q) > 1e-12)
                throw domain_error("rational slope: arccos(r/R)/pi differs from a/q");
        }
    }

    const ShellDomain& domain() const { return dom_; }
    const std::optional<RationalSlope>& slope() const { return slope_; }

    double G(double x) const {
        if (x < 0.0 && x > -1e-14 * dom_.R) x = 0.0;
        if (x > dom_.R && x < dom_.R * (1.0 + 1e-14)) x = dom_.R;
        if (!(x >= 0.0 && x <= dom_.R)) throw domain_error("G: argument outside [0,R]");
        double v = dom_.R * g_fn(x / dom_.R);
        if (x < dom_.r) v -= dom_.r * g_fn(x / dom_.r);
        return v;
    }

    double G0(double x) const {
        if (!(x >= 0.0 && x <= dom_.R * (1.0 + 1e-14))) throw domain_error("G0: argument outside [0,R]");
        return dom_.R * g_fn(std::min(1.0, x / dom_.R));
    }

    double dG(double x) const {
        double v = g_prime(x / dom_.R);
        if (x < dom_.r) v -= g_prime(x / dom_.r);
        return v;
    }

    // cal_g(nu, x) = x G(nu/x), defined for x >= nu/R.
    double cal_g(double nu, double x) const {
        if (!(nu >= 0.0)) throw domain_error("cal_g: nu must be nonnegative");
        if (nu == 0.0) return x * G(0.0);
        if (!(x > 0.0) || nu / x > dom_.R * (1.0 + 1e-14)) throw domain_error("cal_g: need nu/x <= R");
        return x * G(std::min(nu / x, dom_.R));
    }

    double cal_g_dx(double nu, double x) const {
        if (nu == 0.0) return G(0.0);
        const double u = std::min(nu / x, dom_.R);
        return G(u) - u * dG(u);
    }

    // Inverse of G restricted to [r, R]: [0, G(r)] -> [r, R].
    double H(double y) const {
        const double top = G(dom_.r);
        if (y < 0.0 && y > -1e-14) y = 0.0;
        if (y > top && y < top + 1e-14) y = top;
        if (!(y >= 0.0 && y <= top)) throw domain_error("H: argument outside [0, G(r)]");
        if (y == 0.0) return dom_.R;
        const double target = y / dom_.R;
        double lo = dom_.r / dom_.R, hi = 1.0;
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 200; ++it) {
            const double f = g_fn(t) - target;
            if (f > 0.0) lo = t; else hi = t;
            const double slope = g_prime(t);
            double tn = slope != 0.0 ? t - f / slope : 0.5 * (lo + hi);
            if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
            if (std::fabs(tn - t) <= 1e-16 * t || hi - lo <= 1e-16) { t = tn; break; }
            t = tn;
        }
        return dom_.R * t;
    }

    // Minkowski functional of the graph of G: the x >= nu/R with cal_g(nu, x) = y.
    double F(double nu, double y) const { return solve_phase(nu, y); }

    double area() const { return (dom_.R * dom_.R - dom_.r * dom_.r) / 8.0; }

    // T(y): G(T) + (a/q) T + (c + (a/q)(1 - d/2))/mu = y, T in [(l+d/2-1)/mu, r].
    double chord_t(double y, int l, double mu, double c) const {
        if (!slope_) throw domain_error("chord_t: rational slope data absent");
        const double s = static_cast<double>(slope_->a) / slope_->q;
        const double shift = (c + s * (1.0 - 0.5 * dom_.d)) / mu;
        auto phi = [&](double t) { return G(t) + s * t + shift; };
        double lo = (l + 0.5 * dom_.d - 1.0) / mu, hi = dom_.r;
        if (lo < 0.0 || lo > hi) throw domain_error("chord_t: empty range for this l");
        const double blo = phi(lo), bhi = phi(hi);
        if (y < blo - 1e-12 || y > bhi + 1e-12) throw domain_error("chord_t: y outside [beta_l, gamma]");
        if (y <= blo) return lo;
        if (y >= bhi) return hi;
        double t = 0.5 * (lo + hi);
        for (int it = 0; it < 300; ++it) {
            const double f = phi(t) - y;
            if (f < 0.0) lo = t; else hi = t;
            const double slope = dG(t) + s;
            double tn = slope > 0.0 ? t - f / slope : 0.5 * (lo + hi);
            if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
            if (std::fabs(tn - t) <= 1e-15 * std::max(1.0, t) || hi - lo <= 1e-15) { t = tn; break; }
            t = tn;
        }
        return t;
    }

    // Same construction for the graph of g (unit ball).
    static double Fg(double nu, double y) {
        static const PhaseGeometry unit(ShellDomain{0.0, 1.0, 2});
        return unit.F(nu, y);
    }

private:
    double solve_phase(double nu, double y) const {
        using std::numbers::pi;
        if (!(nu >= 0.0) || !(y >= 0.0) || (nu == 0.0 && y == 0.0))
            throw domain_error("minkowski_f: need (nu, y) in the closed quadrant minus the origin");
        const double w = dom_.width();
        if (y == 0.0) return nu / dom_.R;
        if (nu == 0.0) return pi * y / w;
        double lo = std::max(nu / dom_.R, pi * y / w);
        double hi = pi * (y + 0.5 * nu) / w;
        if (cal_g(nu, lo) >= y) return lo;
        double x = 0.5 * (lo + hi);
        for (int it = 0; it < 300; ++it) {
            const double f = cal_g(nu, x) - y;
            if (f < 0.0) lo = x; else hi = x;
            const double slope = cal_g_dx(nu, x);
            double xn = slope > 0.0 ? x - f / slope : 0.5 * (lo + hi);
            if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
            if (std::fabs(xn - x) <= 2e-16 * x || hi - lo <= 2e-16 * x) { x = xn; break; }
            x = xn;
        }
        return x;
    }

    ShellDomain dom_;
    std::optional<RationalSlope> slope_;
};

inline double minkowski_fg(double nu, double y) { return PhaseGeometry::Fg(nu, y); }

}  // namespace shellcount

#endif
