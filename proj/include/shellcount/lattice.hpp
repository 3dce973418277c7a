#ifndef SHELLCOUNT_LATTICE_HPP
#define SHELLCOUNT_LATTICE_HPP

// Shifted lattice counts in mu Omega (Omega under the graph of G), the boundary bands,
// the tau-shifted counts P, their exact row/column/line decompositions into linear
// and sawtooth sums, rounding-error sums and the exponent theta*.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "phase.hpp"
#include "spectrum.hpp"

namespace shellcount {

// psi(t) = t - 1/2 - floor(t), in [-1/2, 1/2).
inline double sawtooth(double t) { return t - 0.5 - std::floor(t); }

// sum_{m<q} psi((x + m)/q) - psi(x); zero up to rounding.
inline double complete_sum_defect(double x, int q) {
    double s = 0.0;
    for (int m = 0; m < q; ++m) s += sawtooth((x + m) / q);
    return s - sawtooth(x);
}

inline double shift_for(BC bc) { return bc == BC::Dirichlet ? 0.25 : 0.75; }

namespace detail {

inline long double g_fn_ld(long double x) {
    x = std::clamp(x, 0.0L, 1.0L);
    const long double pi = 3.141592653589793238462643383279502884L;
    return (std::sqrt((1.0L - x) * (1.0L + x)) - x * std::acos(x)) / pi;
}

inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline long long mod_inverse(long long a, long long q) {
    long long t = 0, nt = 1, r = q, nr = ((a % q) + q) % q;
    while (nr != 0) {
        const long long f = r / nr;
        t -= f * nt; std::swap(t, nt);
        r -= f * nr; std::swap(r, nr);
    }
    if (r != 1) throw domain_error("rational slope: a and q must be coprime");
    return ((t % q) + q) % q;
}

// Sum with Neumaier compensation.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double v) {
        const double t = s + v;
        c += std::fabs(s) >= std::fabs(v) ? (s - t) + v : (v - t) + s;
        s = t;
    }
    double value() const { return s + c; }
};

}  // namespace detail

// Membership tests for the shifted lattice {(nu, y) : nu = n + d/2 - 1} against mu Omega and its bands.
class LatticeGeometry {
public:
    LatticeGeometry(ShellDomain dom, double mu, std::optional<RationalSlope> slope = std::nullopt)
        : geom_(dom, slope), dom_(dom), mu_(mu) {
        if (!(mu > 0.0)) throw domain_error("lattice: mu must be positive");
        if (dom.R * mu > kMaxRadialExtent) throw cap_exceeded("lattice: R * mu exceeds the enumeration cap");
    }

    const PhaseGeometry& geometry() const { return geom_; }
    const ShellDomain& domain() const { return dom_; }
    double mu() const { return mu_; }

    double nu_of(long long n) const { return n + 0.5 * dom_.d - 1.0; }
    bool column_exists(long long n) const { return nu_of(n) <= dom_.R * mu_; }
    long long n_max() const { return static_cast<long long>(std::floor(dom_.R * mu_ - dom_.delta())); }

    double top(long long n) const { return mu_ * geom_.G(std::min(nu_of(n) / mu_, dom_.R)); }

    long double top_ld(long long n) const {
        const long double x = static_cast<long double>(nu_of(n)) / mu_;
        long double v = dom_.R * detail::g_fn_ld(x / dom_.R);
        if (x < dom_.r) v -= dom_.r * detail::g_fn_ld(x / dom_.r);
        return mu_ * v;
    }

    // floor(mu G(nu/mu) + s) with the closed-boundary convention; near-integers are rechecked
    // in extended precision and exact ties count as inside.
    long long column_floor(long long n, double s) const {
        const double t = top(n) + s;
        const double m = std::round(t);
        if (std::fabs(t - m) > 1e-12 * std::max(1.0, std::fabs(t))) return static_cast<long long>(std::floor(t));
        const long double tl = top_ld(n) + s;
        if (std::fabs(tl - static_cast<long double>(m)) <= 1e-17L * std::max(1.0L, std::fabs(tl)))
            return static_cast<long long>(m);
        return static_cast<long long>(std::floor(tl));
    }

    // #{k >= 1 : (nu, k - c) in mu Omega}
    long long column_count(long long n, double c) const {
        if (n < 0 || !column_exists(n)) return 0;
        return std::max(0LL, column_floor(n, c));
    }

    bool contains(long long n, long long k, double c) const {
        return n >= 0 && column_exists(n) && k <= column_floor(n, c);
    }

    // Point (nu, y) with real y.
    bool contains_y(long long n, double y) const {
        if (n < 0 || !column_exists(n)) return false;
        const double v = top(n) - y;
        if (std::fabs(v) > 1e-12 * std::max(1.0, std::fabs(y))) return v > 0.0;
        return top_ld(n) - y >= -1e-17L * std::max(1.0L, std::fabs(static_cast<long double>(y)));
    }

private:
    PhaseGeometry geom_;
    ShellDomain dom_;
    double mu_;
};

// Q_l(mu): points (nu, k - c) in mu Omega with n >= l, k >= 1.
inline long long q_count_direct(const ShellDomain& dom, double mu, double c, int l) {
    if (!(c >= 0.0 && c < 1.0)) throw domain_error("lattice: shift c must lie in [0,1)");
    if (l < 0) throw domain_error("lattice: l must be nonnegative");
    const LatticeGeometry lg(dom, mu);
    long long total = 0;
    for (long long n = l; n <= lg.n_max(); ++n) total += lg.column_count(n, c);
    return total;
}

// Band points in column n: Dirichlet band mu G < y <= mu G + 1/4 (k >= 1), Neumann band
// mu G - 1/4 < y <= mu G (k >= 0), for 0 <= nu <= r mu.
inline long long band_column(const LatticeGeometry& lg, long long n, BC bc) {
    if (n < 0 || lg.nu_of(n) > lg.domain().r * lg.mu()) return 0;
    if (bc == BC::Dirichlet)
        return std::max(0LL, lg.column_floor(n, 0.25)) - std::max(0LL, lg.column_floor(n, 0.0));
    const long long hi = lg.column_floor(n, 0.0);
    const long long lo = std::max(lg.column_floor(n, -0.25) + 1, 0LL);
    return std::max(0LL, hi - lo + 1);
}

// Q_{B,l}
inline long long band_count_direct(const ShellDomain& dom, double mu, BC bc, int l) {
    if (l < 0) throw domain_error("lattice: l must be nonnegative");
    const LatticeGeometry lg(dom, mu);
    long long total = 0;
    for (long long n = l; lg.nu_of(n) <= dom.r * mu; ++n) total += band_column(lg, n, bc);
    return total;
}

// P_l(mu): points (nu, k - tau) (Dirichlet) or (nu, k + tau) (Neumann) in mu Omega, n >= l,
// with tau from each zero's tag.
inline long long p_count_direct(const SpectrumTable& table, double mu, int l) {
    const LatticeGeometry lg(table.domain().is_ball() ? ShellDomain{0.0, table.domain().R, table.domain().d}
                                                      : table.domain(),
                             mu);
    const bool dir = table.bc() == BC::Dirichlet;
    long long total = 0;
    for (const RadialMode& m : table.modes()) {
        if (m.n < l) continue;
        for (const ZeroEntry& z : m.zeros) {
            // moving the point to tau = 1/4 never enters mu Omega: needs 0 <= tau <= 1/4
            if (!(z.tau >= 0.0 && z.tau <= 0.25)) throw numerical_failure("p_count: tau outside [0, 1/4]");
            if (lg.contains_y(m.n, dir ? z.k - z.tau : z.k + z.tau)) ++total;
        }
    }
    return total;
}

struct QFormula {
    double value = 0.0;     // linear - psi_sum
    long long count = 0;    // value rounded
    double area = 0.0;      // |(mu Omega)_l|
    double linear = 0.0;
    double psi_sum = 0.0;
    std::string path = "generic";
    // rational path only
    long long q_triangle = 0;
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
};

namespace detail {

// (3/4) u sqrt(1-u^2) + (1/4) arcsin u - (u^2/2) arccos u, all over pi: antiderivative of g.
inline double g_integral(double u) {
    u = std::clamp(u, 0.0, 1.0);
    const double s = std::sqrt((1.0 - u) * (1.0 + u));
    return (0.75 * u * s + 0.25 * std::asin(u) - 0.5 * u * u * std::acos(u)) / std::numbers::pi;
}

}  // namespace detail

// integral of G over [x0, R], x0 >= 0
inline double g_area_from(const ShellDomain& dom, double x0) {
    const double R = dom.R, r = dom.r;
    double a = R * R * (detail::g_integral(1.0) - detail::g_integral(x0 / R));
    if (r > 0.0 && x0 < r) a -= r * r * (detail::g_integral(1.0) - detail::g_integral(x0 / r));
    return a;
}

// |(mu Omega)_l|, the part of mu Omega with x >= l + (d-3)/2; for d = 2, l = 0 the strip
// [-1/2, 0] x [0, mu G(0)] is included.
inline double lattice_area(const ShellDomain& dom, double mu, int l) {
    const double x0 = l + 0.5 * (dom.d - 3);
    const PhaseGeometry g(dom);
    if (x0 >= dom.R * mu) return 0.0;
    if (x0 < 0.0) return mu * mu * g_area_from(dom, 0.0) - x0 * mu * g.G(0.0);
    return mu * mu * g_area_from(dom, x0 / mu);
}

// Q_l(mu) through rows below y = G(r) mu and columns (or lines, with a rational slope) above it.
// Each floor is split as floor(t) = t - 1/2 - psi(t); near-integer arguments are settled by
// the same membership test as q_count_direct.
inline QFormula q_count_formula(const ShellDomain& dom, double mu, double c, int l,
                                std::optional<RationalSlope> slope = std::nullopt) {
    if (!(c >= 0.0 && c < 1.0)) throw domain_error("lattice: shift c must lie in [0,1)");
    if (l < 0) throw domain_error("lattice: l must be nonnegative");
    const LatticeGeometry lg(dom, mu, slope);
    const PhaseGeometry& g = lg.geometry();
    const double half_d = 0.5 * dom.d;
    const double nu_l = l + half_d - 1.0;
    QFormula out;
    out.area = lattice_area(dom, mu, l);
    if (nu_l > dom.R * mu) return out;

    detail::KahanSum lin, psi;
    const double r = dom.r;
    const bool split = nu_l < r * mu;
    const double g_r = g.G(r);

    // Rows c < k <= Y + c, Y = G(r) mu or mu G(nu_l/mu).
    const long long k1 = split ? static_cast<long long>(std::floor(g_r * mu + c)) : lg.column_floor(l, c);
    for (long long k = 1; k <= k1; ++k) {
        const double y = (k - c) / mu;
        const double t = mu * g.H(std::min(y, g_r)) - half_d + 1.0;  // largest n with the point inside
        long long fl = static_cast<long long>(std::floor(t));
        const double m = std::round(t);
        if (std::fabs(t - m) < 1e-9 * std::max(1.0, t)) fl = lg.contains(static_cast<long long>(m), k, c) ? m : m - 1;
        lin.add(mu * g.H(std::min(y, g_r)) - l - 0.5 * (dom.d - 3));
        psi.add(t - 0.5 - static_cast<double>(fl));
    }

    if (split && !slope) {
        // Columns l <= n with nu < r mu: floor(mu G + c) - floor(G(r) mu + c).
        const double b = g_r * mu + c;
        for (long long n = l; lg.nu_of(n) < r * mu; ++n) {
            const double a = lg.top(n) + c;
            const long long fa = lg.column_floor(n, c);
            lin.add(lg.top(n) - g_r * mu);
            psi.add(a - 0.5 - static_cast<double>(fa));
            psi.add(-(b - 0.5 - static_cast<double>(k1)));
        }
    } else if (split) {
        out.path = "rational";
        const long long a = slope->a, q = slope->q;
        const double s = static_cast<double>(a) / q;
        const long long a_inv = detail::mod_inverse(a, q);
        const double beta = g.G(nu_l / mu) + (c + s * l) / mu;
        const double gamma = g_r + s * r + (c + s * (1.0 - half_d)) / mu;
        const long long t_lo = static_cast<long long>(std::floor(mu * q * beta)) + 1;
        const long long t_hi = static_cast<long long>(std::floor(mu * q * gamma));

        // triangle: l <= n, nu < r mu, k1 < k, a n + q k <= t_hi
        for (long long n = l; lg.nu_of(n) < r * mu; ++n)
            out.q_triangle += std::max(0LL, detail::floor_div(t_hi - a * n, q) - k1);

        // Omega_2^*: points on a n + q k = t strictly above the curve, n >= l
        detail::KahanSum s1, s2, s3;
        for (long long t = t_lo; t <= t_hi; ++t) {
            const long long x0 = ((t % q) * a_inv % q + q) % q;
            const double T = g.chord_t(static_cast<double>(t) / (mu * q), l, mu, c);
            const double B = (mu * T - x0 - half_d + 1.0) / q;
            const long long m_lo = -detail::floor_div(x0 - l, q);  // ceil((l - x0)/q)
            long long m_hi = static_cast<long long>(std::ceil(B)) - 1;
            const double mr = std::round(B);
            if (std::fabs(B - mr) < 1e-9 * std::max(1.0, std::fabs(B))) {
                const long long ms = static_cast<long long>(mr);
                const long long ns = x0 + q * ms;
                m_hi = lg.contains(ns, (t - a * ns) / q, c) ? ms - 1 : ms;
            }
            const double A = static_cast<double>(l - x0) / q;
            s1.add(B - A);
            s3.add(static_cast<double>(m_hi + 1) - B - 0.5);
            s2.add(-(static_cast<double>(m_lo) - A - 0.5));
        }
        out.s1 = s1.value();
        out.s2 = s2.value();
        out.s3 = s3.value();
        lin.add(static_cast<double>(out.q_triangle));
        lin.add(-out.s1);
        psi.add(out.s2);
        psi.add(out.s3);
    }
    out.linear = lin.value();
    out.psi_sum = psi.value();
    out.value = out.linear - out.psi_sum;
    out.count = std::llround(out.value);
    if (std::fabs(out.value - static_cast<double>(out.count)) > 1e-6 * std::max(1.0, std::fabs(out.value)))
        throw numerical_failure("q_count_formula: decomposition is not integral");
    return out;
}

struct WeightedTotals {
    long long q_omega = 0;
    long long p_omega = 0;
    long long band_total = 0;
};

// m_l - m_{l-1}
inline long long weight(long long l, int d) { return multiplicity(l, d) - multiplicity(l - 1, d); }

// Main terms of Q_Omega: the volume term of N and -+ R^{d-1} mu^{d-1} / (2 (d-1)!).
inline WeylTerms q_omega_terms(const ShellDomain& dom, BC bc, double mu) {
    WeylTerms w = weyl_two_term(dom, bc, mu);
    const double b = std::pow(dom.R, dom.d - 1) / (2.0 * std::tgamma(static_cast<double>(dom.d))) * std::pow(mu, dom.d - 1);
    w.main_b = bc == BC::Dirichlet ? -b : b;
    return w;
}

// Sum over l <= R mu - (d-2)/2 of (m_l - m_{l-1}) times Q_l, P_l and Q_{B,l}.
inline WeightedTotals weighted_totals(const SpectrumTable& table, double mu) {
    const ShellDomain dom = table.domain().is_ball() ? ShellDomain{0.0, table.domain().R, table.domain().d}
                                                     : table.domain();
    const LatticeGeometry lg(dom, mu);
    const double c = shift_for(table.bc());
    const long long n_top = lg.n_max();
    // suffix sums turn the per-l counts into one pass
    std::vector<long long> qcol(n_top + 2, 0), pcol(n_top + 2, 0), bcol(n_top + 2, 0);
    for (long long n = 0; n <= n_top; ++n) qcol[n] = lg.column_count(n, c);
    for (const RadialMode& m : table.modes()) {
        if (m.n > n_top) continue;
        for (const ZeroEntry& z : m.zeros)
            pcol[m.n] += lg.contains_y(m.n, table.bc() == BC::Dirichlet ? z.k - z.tau : z.k + z.tau);
    }
    for (long long n = 0; n <= n_top; ++n) bcol[n] = band_column(lg, n, table.bc());
    WeightedTotals w;
    long long qs = 0, ps = 0, bs = 0;
    std::vector<long long> qsuf(n_top + 2), psuf(n_top + 2), bsuf(n_top + 2);
    for (long long n = n_top; n >= 0; --n) {
        qs += qcol[n]; ps += pcol[n]; bs += bcol[n];
        qsuf[n] = qs; psuf[n] = ps; bsuf[n] = bs;
    }
    const double l_top = dom.R * mu - 0.5 * (dom.d - 2);
    for (long long l = 0; l <= l_top && l <= n_top; ++l) {
        const long long wl = weight(l, dom.d);
        w.q_omega += wl * qsuf[l];
        w.p_omega += wl * psuf[l];
        w.band_total += wl * bsuf[l];
    }
    return w;
}

// ---------------------------------------------------------------------------
// rounding-error sums

struct SawtoothSum {
    double T = 0.0;
    long long M = 0, M2 = 0;
    std::string phase_id;
    double value = 0.0;
    bool in_range = false;  // T^{141/328} <= M <= T^{1/2}, range constant taken as 0
};

inline SawtoothSum rounding_error_sum(double T, long long M, long long M2, const std::function<double(double)>& phase,
                                      std::string phase_id) {
    if (M < 1 || M2 < M || M2 > 2 * M - 1) throw domain_error("psi-sum: need 1 <= M <= M2 <= 2M - 1");
    if (!(T > 0.0)) throw domain_error("psi-sum: T must be positive");
    SawtoothSum s;
    s.T = T;
    s.M = M;
    s.M2 = M2;
    s.phase_id = std::move(phase_id);
    detail::KahanSum acc;
    const double md = static_cast<double>(M);
    for (long long m = M; m <= M2; ++m) acc.add(sawtooth(T / md * phase(m / md)));
    s.value = acc.value();
    s.in_range = std::pow(T, 141.0 / 328.0) <= md && md <= std::sqrt(T) * (1.0 + 1e-12);
    return s;
}

// F(x) = (mu/M)^{2/3} H((M x - c)/mu) - (d/2 - 1)/N with N = M^{2/3} mu^{1/3}, so that
// (T/M) F(m/M) = mu H((m - c)/mu) - d/2 + 1 for T = M N. Given (T, M): mu = T^3/M^5.
class AnnulusHPhase {
public:
    AnnulusHPhase(ShellDomain dom, double T, long long M, double c)
        : geom_(dom), d_(dom.d), M_(static_cast<double>(M)), c_(c) {
        if (dom.is_ball()) throw domain_error("annulus phase: need a shell");
        mu_ = T * T * T / std::pow(M_, 5.0);
        N_ = std::cbrt(M_ * M_ * mu_);
        const double y_max = (2.0 * M_ - 1.0 - c_) / mu_;
        if (y_max > geom_.G(dom.r)) throw domain_error("annulus phase: (2M - 1 - c)/mu exceeds G(r); enlarge the shell");
    }

    double mu() const { return mu_; }

    double operator()(double x) const {
        return std::cbrt((mu_ / M_) * (mu_ / M_)) * geom_.H((M_ * x - c_) / mu_) - (0.5 * d_ - 1.0) / N_;
    }

private:
    PhaseGeometry geom_;
    int d_;
    double M_, c_, mu_ = 0.0, N_ = 0.0;
};

// ---------------------------------------------------------------------------
// theta*

struct ThetaStar {
    double value = 0.0;
    double residual = 0.0;
};

// f(x) = -(8/25) x - (1/200)(sqrt(2(1 - 14x)) - 5 sqrt(-1 - 8x))^2 + 51/200 + x
inline double theta_equation(double x) {
    const double b = std::sqrt(2.0 * (1.0 - 14.0 * x)) - 5.0 * std::sqrt(-1.0 - 8.0 * x);
    return -0.32 * x - b * b / 200.0 + 51.0 / 200.0 + x;
}

inline ThetaStar solve_theta_star() {
    double lo = -0.35, hi = -0.3;
    double flo = theta_equation(lo), fhi = theta_equation(hi);
    if ((flo > 0) == (fhi > 0)) throw numerical_failure("theta*: no sign change on [-0.35, -0.3]");
    while (hi - lo > 1e-15) {
        const double mid = 0.5 * (lo + hi);
        const double fm = theta_equation(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    ThetaStar t;
    t.value = -0.5 * (lo + hi);
    t.residual = theta_equation(-t.value);
    return t;
}

}  // namespace shellcount

#endif
