#ifndef SHELLCOUNT_BESSEL_HPP
#define SHELLCOUNT_BESSEL_HPP

// Bessel functions J, Y and their derivatives for real order nu >= 0 and real x > 0,
// Airy functions, and the ultraspherical variants j_{nu,delta} = x^{-delta} J_nu.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dd.hpp"
#include "errors.hpp"

namespace shellcount {

enum class BesselRegime { series, hankel, olver_uniform, airy_transition };

inline const char* to_string(BesselRegime r) {
    switch (r) {
        case BesselRegime::series: return "series";
        case BesselRegime::hankel: return "hankel";
        case BesselRegime::olver_uniform: return "olver_uniform";
        case BesselRegime::airy_transition: return "airy_transition";
    }
    return "?";
}

// Region of the (nu, x) plane, using the switch points series: x <= max(12, nu/2),
// hankel: x >= max(10, 1.5 nu), otherwise Olver/Airy depending on |x - nu|.
inline BesselRegime classify_bessel_regime(double nu, double x, double eps = 0.1) {
    if (x <= std::max(12.0, 0.5 * nu)) return BesselRegime::series;
    if (x >= std::max(10.0, 1.5 * nu)) return BesselRegime::hankel;
    if (std::fabs(x - nu) <= std::pow(nu, 1.0 / 3.0 + eps)) return BesselRegime::airy_transition;
    return BesselRegime::olver_uniform;
}

struct BesselQuad {
    double j = 0, y = 0, jp = 0, yp = 0;
    BesselRegime regime = BesselRegime::series;
};

// J = j e^{log_j}, J' = jp e^{log_j}, Y = y e^{log_y}, Y' = yp e^{log_y}.
struct ScaledBessel {
    double j = 0, jp = 0, log_j = 0;
    double y = 0, yp = 0, log_y = 0;
};

struct LogBessel {
    double log_j = 0, log_y = 0, log_jp = 0, log_yp = 0;
    int sign_j = 0, sign_y = 0, sign_jp = 0, sign_yp = 0;
};

namespace detail {

// Taylor coefficients of 1/Gamma(1+z) about z = 0.
inline constexpr double kRGamma1p[] = {
    1.0,
    0.57721566490153286061,
    -0.65587807152025388108,
    -0.042002635034095235529,
    0.1665386113822914895,
    -0.042197734555544336748,
    -0.0096219715278769735621,
    0.0072189432466630995424,
    -0.0011651675918590651121,
    -0.00021524167411495097282,
    0.00012805028238811618615,
    -0.000020134854780788238656,
    -1.2504934821426706573e-6,
    1.1330272319816958824e-6,
    -2.0563384169776071035e-7,
    6.1160951044814158179e-9,
    5.0020076444692229301e-9,
    -1.1812745704870201446e-9,
    1.0434267116911005105e-10,
    7.782263439905071254e-12,
    -3.6968056186422057082e-12,
    5.100370287454475979e-13,
    -2.0583260535665067832e-14,
    -5.3481225394230179824e-15,
    1.2267786282382607902e-15,
    -1.1812593016974587695e-16,
    1.1866922547516003326e-18,
    1.4123806553180317816e-18,
    -2.2987456844353702066e-19,
};

// Temme's gamma combinations for |mu| <= 1/2:
// gam1 = (1/G(1-mu) - 1/G(1+mu)) / (2 mu), gam2 = (1/G(1-mu) + 1/G(1+mu)) / 2.
inline void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    constexpr int n = sizeof(kRGamma1p) / sizeof(double);
    const double m2 = mu * mu;
    double even = 0.0, odd = 0.0;
    for (int i = (n - 1) / 2 * 2; i >= 0; i -= 2) even = even * m2 + kRGamma1p[i];
    for (int i = (n - 2) / 2 * 2 + 1; i >= 1; i -= 2) odd = odd * m2 + kRGamma1p[i];
    gam1 = -odd;
    gam2 = even;
    gampl = even + mu * odd;
    gammi = even - mu * odd;
}

inline constexpr double kRescale = 1e200;
inline const double kLogRescale = std::log(1e200);

}  // namespace detail

// Steed's continued fractions (x >= 2) or Temme's series (x < 2) at the reduced order,
// three-term recurrences to nu, with running rescaling so nothing overflows.
inline ScaledBessel bessel_scaled(double nu, double x) {
    using std::numbers::pi;
    if (!(x > 0.0)) throw domain_error("bessel: x must be positive");
    if (!(nu >= 0.0)) throw domain_error("bessel: order must be nonnegative");
    if (!std::isfinite(x) || !std::isfinite(nu)) throw domain_error("bessel: non-finite argument");

    constexpr double EPS = 1e-16;
    constexpr double FPMIN = 1e-300;
    constexpr double XMIN = 2.0;
    const int maxit = 20000 + static_cast<int>(4.0 * x);

    const int nl = x < XMIN ? static_cast<int>(nu + 0.5)
                            : std::max(0, static_cast<int>(nu - x + 1.5));
    const double xmu = nu - nl;
    const double xmu2 = xmu * xmu;
    const double xi = 1.0 / x;
    const double xi2 = 2.0 * xi;
    const double w = xi2 / pi;

    // CF1: J'_nu / J_nu.
    int isign = 1;
    double h = nu * xi;
    if (h < FPMIN) h = FPMIN;
    double b = xi2 * nu, d = 0.0, c = h;
    int it = 1;
    for (; it <= maxit; ++it) {
        b += xi2;
        d = b - d;
        if (std::fabs(d) < FPMIN) d = FPMIN;
        c = b - 1.0 / c;
        if (std::fabs(c) < FPMIN) c = FPMIN;
        d = 1.0 / d;
        const double del = c * d;
        h *= del;
        if (d < 0.0) isign = -isign;
        if (std::fabs(del - 1.0) < EPS) break;
    }
    if (it > maxit) throw numerical_failure("bessel: CF1 did not converge");

    // Downward recurrence for J from nu to xmu, unnormalized.
    double rjl = isign;
    double rjpl = h * rjl;
    const double rjl1 = rjl, rjp1 = rjpl;
    double jscale = 0.0;
    double fact = nu * xi;
    for (int l = nl; l >= 1; --l) {
        const double rjtemp = fact * rjl + rjpl;
        fact -= xi;
        rjpl = fact * rjtemp - rjl;
        rjl = rjtemp;
        if (std::fabs(rjl) > detail::kRescale) {
            rjl /= detail::kRescale;
            rjpl /= detail::kRescale;
            jscale += detail::kLogRescale;
        }
    }
    if (rjl == 0.0) rjl = EPS;
    const double f = rjpl / rjl;

    double rjmu, rymu, rymup, ry1;
    if (x < XMIN) {
        const double x2 = 0.5 * x;
        const double pimu = pi * xmu;
        const double fct = std::fabs(pimu) < EPS ? 1.0 : pimu / std::sin(pimu);
        double dd_ = -std::log(x2);
        double e = xmu * dd_;
        const double fct2 = std::fabs(e) < EPS ? 1.0 : std::sinh(e) / e;
        double gam1, gam2, gampl, gammi;
        detail::temme_gammas(xmu, gam1, gam2, gampl, gammi);
        double ff = 2.0 / pi * fct * (gam1 * std::cosh(e) + gam2 * fct2 * dd_);
        e = std::exp(e);
        double p = e / (gampl * pi);
        double q = 1.0 / (e * pi * gammi);
        const double pimu2 = 0.5 * pimu;
        const double fct3 = std::fabs(pimu2) < EPS ? 1.0 : std::sin(pimu2) / pimu2;
        const double r = pi * pimu2 * fct3 * fct3;
        double cc = 1.0;
        dd_ = -x2 * x2;
        double sum = ff + r * q;
        double sum1 = p;
        int i = 1;
        for (; i <= maxit; ++i) {
            ff = (i * ff + p + q) / (i * static_cast<double>(i) - xmu2);
            cc *= dd_ / i;
            p /= (i - xmu);
            q /= (i + xmu);
            const double del = cc * (ff + r * q);
            sum += del;
            const double del1 = cc * p - i * del;
            sum1 += del1;
            if (std::fabs(del) < (1.0 + std::fabs(sum)) * EPS) break;
        }
        if (i > maxit) throw numerical_failure("bessel: Temme series did not converge");
        rymu = -sum;
        ry1 = -sum1 * xi2;
        rymup = xmu * xi * rymu - ry1;
        rjmu = w / (rymup - f * rymu);
    } else {
        // CF2: p + iq = (J' + iY') / (J + iY) at order xmu.
        double a = 0.25 - xmu2;
        double p = -0.5 * xi;
        double q = 1.0;
        const double br = 2.0 * x;
        double bi = 2.0;
        double fct = a * xi / (p * p + q * q);
        double cr = br + q * fct;
        double ci = bi + p * fct;
        double den = br * br + bi * bi;
        double dr = br / den;
        double di = -bi / den;
        double dlr = cr * dr - ci * di;
        double dli = cr * di + ci * dr;
        double temp = p * dlr - q * dli;
        q = p * dli + q * dlr;
        p = temp;
        int i = 2;
        for (; i <= maxit; ++i) {
            a += 2 * (i - 1);
            bi += 2.0;
            dr = a * dr + br;
            di = a * di + bi;
            if (std::fabs(dr) + std::fabs(di) < FPMIN) dr = FPMIN;
            fct = a / (cr * cr + ci * ci);
            cr = br + cr * fct;
            ci = bi - ci * fct;
            if (std::fabs(cr) + std::fabs(ci) < FPMIN) cr = FPMIN;
            den = dr * dr + di * di;
            dr /= den;
            di /= -den;
            dlr = cr * dr - ci * di;
            dli = cr * di + ci * dr;
            temp = p * dlr - q * dli;
            q = p * dli + q * dlr;
            p = temp;
            if (std::fabs(dlr - 1.0) + std::fabs(dli) < EPS) break;
        }
        if (i > maxit) throw numerical_failure("bessel: CF2 did not converge");
        const double gam = (p - f) / q;
        rjmu = std::sqrt(w / ((p - f) * gam + q));
        rjmu = std::copysign(rjmu, rjl);
        rymu = rjmu * gam;
        rymup = rymu * (p + q / gam);
        ry1 = xmu * xi * rymu - rymup;
    }

    ScaledBessel out;
    const double scale = rjmu / rjl;
    out.j = rjl1 * scale;
    out.jp = rjp1 * scale;
    out.log_j = -jscale;

    double yscale = 0.0;
    for (int i = 1; i <= nl; ++i) {
        const double rytemp = (xmu + i) * xi2 * ry1 - rymu;
        rymu = ry1;
        ry1 = rytemp;
        if (std::fabs(ry1) > detail::kRescale) {
            ry1 /= detail::kRescale;
            rymu /= detail::kRescale;
            yscale += detail::kLogRescale;
        }
    }
    out.y = rymu;
    out.yp = nu * xi * rymu - ry1;
    out.log_y = yscale;

    // Keep mantissas O(1) so callers can combine them freely.
    auto normalize = [](double& m1, double& m2, double& lg) {
        const double mag = std::max(std::fabs(m1), std::fabs(m2));
        if (mag > 0.0 && std::isfinite(mag)) {
            const double l = std::log(mag);
            m1 /= mag;
            m2 /= mag;
            lg += l;
        }
    };
    normalize(out.j, out.jp, out.log_j);
    normalize(out.y, out.yp, out.log_y);
    return out;
}

namespace detail {

inline double unscale(double m, double lg) {
    if (m == 0.0) return 0.0;
    const double l = std::log(std::fabs(m)) + lg;
    if (l > 709.0) throw overflow_error("bessel: magnitude exceeds double range; use the log-scaled variant");
    if (l < -690.0) return std::copysign(0.0, m);  // below 1e-300: flushed, sign kept
    return m * std::exp(lg);
}

}  // namespace detail

inline BesselQuad bessel_quad(double nu, double x) {
    const ScaledBessel s = bessel_scaled(nu, x);
    BesselQuad q;
    q.j = detail::unscale(s.j, s.log_j);
    q.jp = detail::unscale(s.jp, s.log_j);
    q.y = detail::unscale(s.y, s.log_y);
    q.yp = detail::unscale(s.yp, s.log_y);
    q.regime = classify_bessel_regime(nu, x);
    return q;
}

inline LogBessel bessel_log_scaled(double nu, double x) {
    const ScaledBessel s = bessel_scaled(nu, x);
    auto lg = [](double m, double base, double& l, int& sg) {
        sg = (m > 0) - (m < 0);
        l = m == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::fabs(m)) + base;
    };
    LogBessel out;
    lg(s.j, s.log_j, out.log_j, out.sign_j);
    lg(s.jp, s.log_j, out.log_jp, out.sign_jp);
    lg(s.y, s.log_y, out.log_y, out.sign_y);
    lg(s.yp, s.log_y, out.log_yp, out.sign_yp);
    return out;
}

// ---------------------------------------------------------------------------
// Independent evaluators, one per classical regime. Used for cross-validation.

namespace detail {

inline bool near_integer(double nu, double tol, int& n) {
    const double r = std::round(nu);
    n = static_cast<int>(r);
    return std::fabs(nu - r) < tol;
}

// S = sum_k (-x^2/4)^k / (k! (a+1)_k) and x dS/dx, accumulated in double-double.
inline void ascending_sum(double a, double x, dd& s, dd& xds, double& largest) {
    const dd q = detail::two_prod(x, x) * dd(-0.25);
    dd t(1.0);
    s = dd(1.0);
    xds = dd(0.0);
    largest = 1.0;
    for (int k = 1; k < 2000; ++k) {
        t = t * q / (dd(k) * (dd(a) + dd(k)));
        s += t;
        xds += t * dd(2.0 * k);
        largest = std::max(largest, abs(t));
        if (abs(t) < 1e-34 * std::max(1.0, abs(s)) && k > std::fabs(x)) break;
    }
}

}  // namespace detail

// Ascending power series (Y through the reflection or the integer-order limit formula).
inline BesselQuad bessel_series(double nu, double x) {
    using std::numbers::pi;
    if (!(x > 0.0)) throw domain_error("bessel_series: x must be positive");
    const double lx2 = std::log(0.5 * x);
    BesselQuad q;
    q.regime = BesselRegime::series;

    dd s, xds;
    double big;
    detail::ascending_sum(nu, x, s, xds, big);
    const double pref = std::exp(nu * lx2 - std::lgamma(nu + 1.0));
    q.j = pref * s.to_double();
    q.jp = pref * (dd(nu) * s + xds).to_double() / x;

    int n;
    if (!detail::near_integer(nu, 1e-6, n)) {
        dd sm, xdsm;
        detail::ascending_sum(-nu, x, sm, xdsm, big);
        const double prefm = std::exp(-nu * lx2) / std::tgamma(1.0 - nu);
        const double jm = prefm * sm.to_double();
        const double jmp = prefm * (dd(-nu) * sm + xdsm).to_double() / x;
        const double cs = std::cos(nu * pi), sn = std::sin(nu * pi);
        q.y = (q.j * cs - jm) / sn;
        q.yp = (q.jp * cs - jmp) / sn;
        return q;
    }

    // Integer order n: Y_n = (2/pi) ln(x/2) J_n - (1/pi) sum_{k<n} ... - (1/pi) sum_k ...
    const double jn = q.j, jnp = q.jp;
    const dd h2 = detail::two_prod(0.5 * x, 0.5 * x);
    dd fin(0.0), finp(0.0);
    if (n > 0) {
        dd v = dd(std::tgamma(static_cast<double>(n))) / dd(std::pow(0.5 * x, n));
        for (int k = 0; k < n; ++k) {
            if (k > 0) v = v * h2 / dd(static_cast<double>(k) * (n - k));
            fin += v;
            finp += v * dd(static_cast<double>(2 * k - n) / x);
        }
    }
    const dd euler(0.5772156649015329, -4.942915152430645e-18);
    dd hk(0.0), hnk(0.0);
    for (int i = 1; i <= n; ++i) hnk += dd(1.0) / dd(i);
    dd u = dd(std::pow(0.5 * x, n)) / dd(std::tgamma(n + 1.0));
    const dd mq = h2 * dd(-1.0);
    dd inf(0.0), infp(0.0);
    for (int k = 0; k < 2000; ++k) {
        if (k > 0) {
            u = u * mq / dd(static_cast<double>(k) * (n + k));
            hk += dd(1.0) / dd(k);
            hnk += dd(1.0) / dd(n + k);
        }
        const dd psis = hk + hnk - euler - euler;
        const dd term = psis * u;
        inf += term;
        infp += term * dd(static_cast<double>(2 * k + n) / x);
        if (abs(u) < 1e-34 * std::max(1.0, abs(inf)) && k > x) break;
    }
    q.y = (2.0 / pi) * lx2 * jn - (fin + inf).to_double() / pi;
    q.yp = (2.0 / pi) * (jn / x + lx2 * jnp) - (finp + infp).to_double() / pi;
    return q;
}

namespace detail {

// J, Y by Hankel's large-argument expansion; also returns the last term used.
inline void hankel_jy(double nu, double x, double& j, double& y, double& err) {
    using std::numbers::pi;
    const double m = 4.0 * nu * nu;
    double a = 1.0, P = 1.0, Q = 0.0, prev = 1.0;
    err = 0.0;
    for (int k = 1; k < 200; ++k) {
        const double na = a * (m - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * x);
        if (std::fabs(na) > std::fabs(prev) && k > 1) break;
        a = na;
        prev = a;
        const int s = (k / 2) % 2 == 0 ? 1 : -1;
        if (k % 2 == 0) P += s * a; else Q += (((k - 1) / 2) % 2 == 0 ? 1 : -1) * a;
        err = std::fabs(a);
        if (err < 1e-17) break;
    }
    const double chi = x - (0.5 * nu + 0.25) * pi;
    const double amp = std::sqrt(2.0 / (pi * x));
    j = amp * (P * std::cos(chi) - Q * std::sin(chi));
    y = amp * (P * std::sin(chi) + Q * std::cos(chi));
}

}  // namespace detail

inline BesselQuad bessel_hankel(double nu, double x) {
    if (!(x > 0.0)) throw domain_error("bessel_hankel: x must be positive");
    BesselQuad q;
    q.regime = BesselRegime::hankel;
    double e, jm, ym, jpl, ypl;
    detail::hankel_jy(nu, x, q.j, q.y, e);
    detail::hankel_jy(nu - 1.0, x, jm, ym, e);
    detail::hankel_jy(nu + 1.0, x, jpl, ypl, e);
    q.jp = 0.5 * (jm - jpl);
    q.yp = 0.5 * (ym - ypl);
    return q;
}

// ---------------------------------------------------------------------------
// Airy functions.

struct AiryQuad {
    double ai = 0, bi = 0, aip = 0, bip = 0;
};

inline AiryQuad airy_quad(double t) {
    using std::numbers::pi;
    AiryQuad out;
    if (std::fabs(t) <= 9.0) {
        const dd c1(0.3550280538878172, 2.05233632436212e-17);
        const dd c2(0.2588194037928068, -2.522243111610832e-17);
        const dd s3(1.7320508075688772, 1.0035084221806903e-16);
        const dd t3 = dd(t) * dd(t) * dd(t);
        dd f(1.0), g(t), fp(0.0), gp(1.0);
        dd a(1.0), bterm(t), p = dd(0.5) * dd(t) * dd(t), qd(1.0);
        fp = p;
        for (int k = 1; k < 200; ++k) {
            a = a * t3 / dd((3.0 * k - 1) * (3.0 * k));
            bterm = bterm * t3 / dd((3.0 * k) * (3.0 * k + 1));
            qd = qd * t3 / dd((3.0 * k) * (3.0 * k - 2));
            f += a;
            g += bterm;
            gp += qd;
            if (k >= 2) {
                p = p * t3 / dd((3.0 * k - 1) * (3.0 * k - 3));
                fp += p;
            }
            if (abs(a) + abs(bterm) + abs(p) + abs(qd) < 1e-36) break;
        }
        out.ai = (c1 * f - c2 * g).to_double();
        out.bi = (s3 * (c1 * f + c2 * g)).to_double();
        out.aip = (c1 * fp - c2 * gp).to_double();
        out.bip = (s3 * (c1 * fp + c2 * gp)).to_double();
        return out;
    }
    // Large |t|: asymptotic expansions in zeta = (2/3)|t|^{3/2}.
    const double x = std::fabs(t);
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    const double x14 = std::sqrt(std::sqrt(x));
    const double sqpi = std::sqrt(pi);
    double u = 1.0, v = 1.0;
    // alternating and plain partial sums of u_k zeta^-k and v_k zeta^-k
    double su_alt = 1.0, su = 1.0, sv_alt = 1.0, sv = 1.0;
    double ue = 1.0, uo = 0.0, ve = 1.0, vo = 0.0;  // even/odd split with (-1)^k on pairs
    double zk = 1.0, last = 1.0;
    for (int k = 1; k < 60; ++k) {
        u = u * (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
        v = -(6.0 * k + 1) / (6.0 * k - 1) * u;
        zk /= zeta;
        const double tu = u * zk, tv = v * zk;
        if (std::fabs(tu) > last) break;
        last = std::fabs(tu);
        const double sg = (k % 2 == 0) ? 1.0 : -1.0;
        su += tu;
        sv += tv;
        su_alt += sg * tu;
        sv_alt += sg * tv;
        const double pair = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 0) {
            ue += pair * tu;
            ve += pair * tv;
        } else {
            uo += pair * tu;
            vo += pair * tv;
        }
        if (last < 1e-18) break;
    }
    if (t > 0) {
        const double em = std::exp(-zeta), ep = std::exp(zeta);
        out.ai = em / (2.0 * sqpi * x14) * su_alt;
        out.aip = -x14 * em / (2.0 * sqpi) * sv_alt;
        out.bi = ep / (sqpi * x14) * su;
        out.bip = x14 * ep / sqpi * sv;
    } else {
        const double th = zeta - 0.25 * pi;
        const double cs = std::cos(th), sn = std::sin(th);
        out.ai = (cs * ue + sn * uo) / (sqpi * x14);
        out.bi = (-sn * ue + cs * uo) / (sqpi * x14);
        out.aip = x14 / sqpi * (sn * ve - cs * vo);
        out.bip = x14 / sqpi * (cs * ve + sn * vo);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ultraspherical variants j_{nu,delta}(x) = x^{-delta} J_nu(x), same for y.

struct UltrasphericalQuad {
    double j = 0, y = 0, jp = 0, yp = 0;
};

inline UltrasphericalQuad ultraspherical(double nu, double delta, double x) {
    if (!(x > 0.0)) throw domain_error("ultraspherical: x must be positive");
    const BesselQuad b = bessel_quad(nu, x);
    UltrasphericalQuad u;
    if (delta == 0.0) {
        u.j = b.j;
        u.y = b.y;
        u.jp = b.jp;
        u.yp = b.yp;
        return u;
    }
    const double s = std::pow(x, -delta);
    u.j = s * b.j;
    u.y = s * b.y;
    u.jp = s * (b.jp - delta * b.j / x);
    u.yp = s * (b.yp - delta * b.y / x);
    return u;
}

}  // namespace shellcount

#endif
