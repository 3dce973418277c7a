#ifndef SHELLCOUNT_COMPLEX_BESSEL_HPP
#define SHELLCOUNT_COMPLEX_BESSEL_HPP

// Complex-argument Bessel functions by ascending series with double-double accumulation,
// plus the pieces needed to form cross-products J(a)Y(b) - J(b)Y(a) off the real axis.

#include <cmath>
#include <complex>
#include <numbers>

#include "dd.hpp"
#include "errors.hpp"

namespace shellcount {

inline constexpr double kUnreliableCondition = 1e12;
inline constexpr double kComplexRadiusCap = 50.0;

struct ComplexSeriesValue {
    double re = 0, im = 0;
    double condition_estimate = 1;  // largest intermediate magnitude / |result|

    std::complex<double> value() const { return {re, im}; }
    bool reliable() const { return condition_estimate <= kUnreliableCondition; }
};

namespace detail {

using cplx = std::complex<double>;

struct CSeries {
    cdd s;            // sum_k (-w^2/4)^k / (k! (a+1)_k)
    cdd wds;          // w dS/dw
    double largest;   // largest partial-sum magnitude
};

inline CSeries complex_ascending(double a, cplx w) {
    const cdd q = cdd(w) * cdd(w) * dd(-0.25);
    cdd t(dd(1.0));
    CSeries out{cdd(dd(1.0)), cdd(dd(0.0)), 1.0};
    const double aw = std::abs(w);
    for (int k = 1; k < 4000; ++k) {
        t = t * q / (dd(k) * (dd(a) + dd(k)));
        out.s += t;
        out.wds += t * dd(2.0 * k);
        out.largest = std::max(out.largest, abs(out.s));
        if (k > aw && abs(t) < 1e-34 * std::max(1.0, abs(out.s))) break;
    }
    return out;
}

inline bool near_int(double nu, int& n) {
    const double r = std::round(nu);
    n = static_cast<int>(r);
    return std::fabs(nu - r) < 1e-6;
}

// Integer order n: J_n(w), J_n'(w), and the non-logarithmic part of Y_n:
// Y_n(w) = (2/pi) log(w/2) J_n(w) + rest(w). Returns rest, rest'.
struct IntegerParts {
    cdd j, jp, rest, restp;
    double largest;
};

inline IntegerParts integer_parts(int n, cplx w) {
    using std::numbers::pi;
    IntegerParts out;
    const cdd W(w);
    const cdd h = W * dd(0.5);
    cdd hn(dd(1.0));
    for (int i = 0; i < n; ++i) hn = hn * h;
    const dd nfact(std::tgamma(n + 1.0));
    CSeries sr = complex_ascending(static_cast<double>(n), w);
    out.j = hn * sr.s / nfact;
    out.jp = hn * (sr.s * dd(static_cast<double>(n)) + sr.wds) / nfact / W;
    out.largest = sr.largest;

    cdd fin(dd(0.0)), finp(dd(0.0));
    if (n > 0) {
        cdd v = cdd(dd(std::tgamma(static_cast<double>(n)))) / hn;
        const cdd h2 = h * h;
        for (int k = 0; k < n; ++k) {
            if (k > 0) v = v * h2 / dd(static_cast<double>(k) * (n - k));
            fin += v;
            finp += v * dd(static_cast<double>(2 * k - n)) / W;
            out.largest = std::max(out.largest, abs(fin));
        }
    }
    const dd euler(0.5772156649015329, -4.942915152430645e-18);
    dd hk(0.0), hnk(0.0);
    for (int i = 1; i <= n; ++i) hnk += dd(1.0) / dd(i);
    cdd u = hn / nfact;
    const cdd mq = h * h * dd(-1.0);
    cdd inf(dd(0.0)), infp(dd(0.0));
    const double aw = std::abs(w);
    for (int k = 0; k < 4000; ++k) {
        if (k > 0) {
            u = u * mq / dd(static_cast<double>(k) * (n + k));
            hk += dd(1.0) / dd(k);
            hnk += dd(1.0) / dd(n + k);
        }
        const cdd term = u * (hk + hnk - euler - euler);
        inf += term;
        infp += term * dd(static_cast<double>(2 * k + n)) / W;
        out.largest = std::max(out.largest, abs(inf));
        if (k > aw && abs(u) < 1e-34 * std::max(1.0, abs(inf))) break;
    }
    const dd ipi = dd(1.0) / dd(3.141592653589793, 1.2246467991473532e-16);
    out.rest = (fin + inf) * (-ipi);
    out.restp = (finp + infp) * (-ipi);
    return out;
}

}  // namespace detail

// J_nu(z), principal branch. Throws unreliable_evaluation past the condition threshold.
inline ComplexSeriesValue bessel_j_complex(double nu, std::complex<double> z) {
    if (!(nu >= 0.0)) throw domain_error("bessel_j_complex: order must be nonnegative");
    if (std::abs(z) > kComplexRadiusCap) throw domain_error("bessel_j_complex: |z| exceeds 50");
    ComplexSeriesValue out;
    if (z == 0.0) {
        out.re = nu == 0.0 ? 1.0 : 0.0;
        return out;
    }
    const detail::CSeries s = detail::complex_ascending(nu, z);
    const std::complex<double> pref = std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0);
    const std::complex<double> v = pref * s.s.to_complex();
    out.re = v.real();
    out.im = v.imag();
    out.condition_estimate = std::max(1.0, s.largest / abs(s.s));
    if (!out.reliable()) throw unreliable_evaluation("bessel_j_complex: condition estimate above 1e12");
    return out;
}

// Y_nu(z), principal branch (cut along the negative real axis).
inline ComplexSeriesValue bessel_y_complex(double nu, std::complex<double> z) {
    using std::numbers::pi;
    if (!(nu >= 0.0)) throw domain_error("bessel_y_complex: order must be nonnegative");
    if (std::abs(z) > kComplexRadiusCap) throw domain_error("bessel_y_complex: |z| exceeds 50");
    if (z == 0.0) throw domain_error("bessel_y_complex: singular at 0");
    ComplexSeriesValue out;
    int n;
    std::complex<double> v;
    double cond;
    if (detail::near_int(nu, n)) {
        const detail::IntegerParts p = detail::integer_parts(n, z);
        const std::complex<double> jn = p.j.to_complex();
        const std::complex<double> lg = (2.0 / pi) * std::log(0.5 * z) * jn;
        v = lg + p.rest.to_complex();
        cond = std::max(1.0, (std::abs(lg) + p.largest / pi) / std::abs(v));
    } else {
        const detail::CSeries sp = detail::complex_ascending(nu, z);
        const detail::CSeries sm = detail::complex_ascending(-nu, z);
        const std::complex<double> jp = std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0) * sp.s.to_complex();
        const std::complex<double> jm = std::pow(0.5 * z, -nu) / std::tgamma(1.0 - nu) * sm.s.to_complex();
        const double cs = std::cos(nu * pi), sn = std::sin(nu * pi);
        v = (jp * cs - jm) / sn;
        cond = std::max({1.0, (std::abs(jp * cs) + std::abs(jm)) / std::abs(sn * v),
                         sp.largest / abs(sp.s), sm.largest / abs(sm.s)});
    }
    out.re = v.real();
    out.im = v.imag();
    out.condition_estimate = cond;
    if (!out.reliable()) throw unreliable_evaluation("bessel_y_complex: condition estimate above 1e12");
    return out;
}

namespace detail {

// Gauge-reduced values at w = s z. For any two scales a = s1 z, b = s2 z the combinations
// J^(p)(a) Y^(q)(b) - J^(q)(b) Y^(p)(a) are unchanged when (J, Y) are replaced by (j, y)
// below: the branch factors z^{+-nu} (non-integer order) or log z (integer order) cancel.
struct GaugeQuad {
    cdd j, jp, y, yp;
    double largest;
};

inline GaugeQuad gauge_quad(double nu, double s, cplx z) {
    using std::numbers::pi;
    const cplx w = s * z;
    const cdd W(w);
    GaugeQuad g;
    int n;
    if (near_int(nu, n)) {
        const IntegerParts p = integer_parts(n, w);
        const dd lg = dd(2.0 / pi * std::log(0.5 * s));
        g.j = p.j;
        g.jp = p.jp;
        g.y = p.j * lg + p.rest;
        g.yp = (p.jp * lg + p.j * dd(2.0 / pi) / W) + p.restp;
        g.largest = p.largest;
        return g;
    }
    const CSeries sp = complex_ascending(nu, w);
    const CSeries sm = complex_ascending(-nu, w);
    const dd cp(std::pow(0.5 * s, nu) / std::tgamma(nu + 1.0));
    const dd cm(-std::pow(0.5 * s, -nu) / (std::tgamma(1.0 - nu) * std::sin(nu * pi)));
    g.j = sp.s * cp;
    g.jp = (sp.s * dd(nu) + sp.wds) * cp / W;
    g.y = sm.s * cm;
    g.yp = (sm.s * dd(-nu) + sm.wds) * cm / W;
    g.largest = std::max(sp.largest, sm.largest);
    return g;
}

// Reduced Hankel sums h1 = sum i^k a_k / w^k, h2 = sum (-i)^k a_k / w^k, so that
// H^(1,2)_nu(w) = sqrt(2/(pi w)) exp(+-i(w - nu pi/2 - pi/4)) h^(1,2).
// Returns the magnitude of the last term kept (truncation estimate, relative).
inline double hankel_reduced(double nu, cplx w, cplx& h1, cplx& h2) {
    const double m = 4.0 * nu * nu;
    cplx term = 1.0;
    h1 = 1.0;
    h2 = 1.0;
    cplx ik = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 200; ++k) {
        const cplx nt = term * (m - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * w);
        const double mag = std::abs(nt);
        if (mag > prev && k > 2) break;
        term = nt;
        prev = mag;
        ik *= cplx(0.0, 1.0);
        h1 += ik * term;
        h2 += std::conj(ik) * term;
        if (mag < 1e-17) break;
    }
    return prev;
}

// Reduced H (p = 0) and H' (p = 1) at order nu: Hankel sums at orders mu - 1 and mu,
// mu = nu - floor(nu), then forward recurrence, which is stable for both Hankel functions.
// In reduced form H_{v+1} = 2v/w H_v - H_{v-1} reads h1_{v+1} = i (2v/w) h1_v + h1_{v-1}
// (conjugate factor for h2); H' = (H_{v-1} - H_{v+1})/2 becomes i (h1_{v-1} + h1_{v+1})/2.
inline double hankel_reduced_recur(double nu, cplx w, cplx h1[2], cplx h2[2]) {
    const int n = static_cast<int>(std::floor(nu));
    const double mu = nu - n;
    cplx a1, a2, b1, b2;  // orders v - 1 and v
    const double err = std::max(hankel_reduced(mu - 1.0, w, a1, a2), hankel_reduced(mu, w, b1, b2));
    const cplx I(0.0, 1.0);
    double v = mu;
    for (int i = 0; i <= n; ++i) {
        // step to orders v and v + 1
        const cplx c1 = I * (2.0 * v / w) * b1 + a1;
        const cplx c2 = -I * (2.0 * v / w) * b2 + a2;
        if (i == n) {
            h1[0] = b1;
            h2[0] = b2;
            h1[1] = 0.5 * I * (a1 + c1);
            h2[1] = -0.5 * I * (a2 + c2);
            break;
        }
        a1 = b1; a2 = b2;
        b1 = c1; b2 = c2;
        v += 1.0;
    }
    return err;
}

}  // namespace detail

}  // namespace shellcount

#endif
