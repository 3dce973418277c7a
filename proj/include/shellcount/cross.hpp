#ifndef SHELLCOUNT_CROSS_HPP
#define SHELLCOUNT_CROSS_HPP

// Cross-products of Bessel functions on a shell r < |x| < R:
//   f(x) = J(Rx)Y(rx) - J(rx)Y(Rx)          Dirichlet
//   g(x) = J'(Rx)Y'(rx) - J'(rx)Y'(Rx)      Neumann, delta = 0
//   h(x) = j'(Rx)y'(rx) - j'(rx)y'(Rx)      Neumann, j = x^{-delta} J
// h is returned rescaled: ht(x) = (Rr)^delta x^{2 delta} h(x) = g(x) + E(x).
// Ball kinds evaluate J(Rx) and j'(Rx).

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "bessel.hpp"
#include "complex_bessel.hpp"
#include "errors.hpp"
#include "phase.hpp"

namespace shellcount {

enum class Kind { F_DIRICHLET, G_NEUMANN_BESSEL, H_NEUMANN_ULTRA, JPRIME_BALL, J_BALL };

inline const char* to_string(Kind k) {
    switch (k) {
        case Kind::F_DIRICHLET: return "F_DIRICHLET";
        case Kind::G_NEUMANN_BESSEL: return "G_NEUMANN_BESSEL";
        case Kind::H_NEUMANN_ULTRA: return "H_NEUMANN_ULTRA";
        case Kind::JPRIME_BALL: return "JPRIME_BALL";
        case Kind::J_BALL: return "J_BALL";
    }
    return "?";
}

inline Kind kind_from_string(const std::string& s) {
    if (s == "F" || s == "F_DIRICHLET") return Kind::F_DIRICHLET;
    if (s == "G" || s == "G_NEUMANN_BESSEL") return Kind::G_NEUMANN_BESSEL;
    if (s == "H" || s == "H_NEUMANN_ULTRA") return Kind::H_NEUMANN_ULTRA;
    if (s == "JPRIME_BALL" || s == "JP") return Kind::JPRIME_BALL;
    if (s == "J_BALL" || s == "J") return Kind::J_BALL;
    throw domain_error("unknown cross-product kind: " + s);
}

struct CrossProductKind {
    Kind kind = Kind::F_DIRICHLET;
    double delta = 0.0;

    bool is_ball() const { return kind == Kind::JPRIME_BALL || kind == Kind::J_BALL; }
    bool dirichlet() const { return kind == Kind::F_DIRICHLET || kind == Kind::J_BALL; }
};

// value = mantissa * exp(log_scale)
struct ScaledValue {
    double mantissa = 0.0;
    double log_scale = 0.0;

    int sign() const { return (mantissa > 0) - (mantissa < 0); }
    double log_abs() const { return std::log(std::fabs(mantissa)) + log_scale; }
    double value() const { return detail::unscale(mantissa, log_scale); }
    // mantissa expressed at another log scale
    double at_scale(double lg) const { return mantissa == 0.0 ? 0.0 : mantissa * std::exp(log_scale - lg); }
};

// Zero regimes keyed on rx against nu +- nu^{1/3+eps} and (1+c) nu.
enum class ZeroRegime { oscillatory, pre_transition, transition, evanescent };

inline const char* to_string(ZeroRegime r) {
    switch (r) {
        case ZeroRegime::oscillatory: return "oscillatory";
        case ZeroRegime::pre_transition: return "pre_transition";
        case ZeroRegime::transition: return "transition";
        case ZeroRegime::evanescent: return "evanescent";
    }
    return "?";
}

struct RegimeKnobs {
    double c = 0.25;     // oscillatory once rx >= (1+c) nu
    double eps = 0.1;    // transition half-width nu^{1/3+eps}
    double V = 40.0;     // "large nu" threshold
    int K = 30;          // "large k" threshold for nu <= V
    double gap_floor = 0.3;  // gamma_1 as a fraction of pi/(R-r)
};

inline double transition_halfwidth(double nu, double eps) {
    return nu > 0.0 ? std::pow(nu, 1.0 / 3.0 + eps) : 0.0;
}

inline ZeroRegime classify_regime(double nu, double rx, const RegimeKnobs& k) {
    const double w = transition_halfwidth(nu, k.eps);
    if (rx >= nu + w) return rx >= (1.0 + k.c) * nu ? ZeroRegime::oscillatory : ZeroRegime::pre_transition;
    if (rx <= nu - w) return ZeroRegime::evanescent;
    return ZeroRegime::transition;
}

// z in rx = nu + z nu^{1/3}
inline double transition_z(double nu, double rx) { return (rx - nu) / std::cbrt(nu); }

namespace detail {

// J^(p)(A) Y^(q)(B) - J^(q)(B) Y^(p)(A) for scaled quads A, B; both terms at scale lg.
inline double cross_at(const ScaledBessel& A, int p, const ScaledBessel& B, int q, double lg) {
    const double ja = p ? A.jp : A.j, ya = p ? A.yp : A.y;
    const double jb = q ? B.jp : B.j, yb = q ? B.yp : B.y;
    return ja * yb * std::exp(A.log_j + B.log_y - lg) - jb * ya * std::exp(B.log_j + A.log_y - lg);
}

inline double cross_scale(const ScaledBessel& A, const ScaledBessel& B) {
    return std::max(A.log_j + B.log_y, B.log_j + A.log_y);
}

}  // namespace detail

// Complex ht: ascending series below r|z| = 12, reduced-order Hankel sums at and above.
inline constexpr double kHankelCut = 12.0;

class CrossProducts {
public:
    explicit CrossProducts(ShellDomain dom) : dom_(dom) { dom_.validate(); }

    const ShellDomain& domain() const { return dom_; }

    ScaledValue eval_scaled(CrossProductKind k, double nu, double x) const {
        if (!(x > 0.0)) throw domain_error("xprod: x must be positive");
        if (!(nu >= 0.0)) throw domain_error("xprod: nu must be nonnegative");
        const double R = dom_.R, r = dom_.r;
        const ScaledBessel A = bessel_scaled(nu, R * x);
        if (k.kind == Kind::J_BALL) return {A.j, A.log_j};
        if (k.kind == Kind::JPRIME_BALL) {
            if (nu < std::fabs(k.delta)) throw domain_error("xprod: ball kind needs nu >= |delta|");
            return {A.jp - k.delta * A.j / (R * x), A.log_j - k.delta * std::log(R * x)};
        }
        if (dom_.is_ball()) throw domain_error("xprod: shell kinds need r > 0");
        const ScaledBessel B = bessel_scaled(nu, r * x);
        const double lg = detail::cross_scale(A, B);
        switch (k.kind) {
            case Kind::F_DIRICHLET: return {detail::cross_at(A, 0, B, 0, lg), lg};
            case Kind::G_NEUMANN_BESSEL: return {detail::cross_at(A, 1, B, 1, lg), lg};
            case Kind::H_NEUMANN_ULTRA: return {htilde(k.delta, nu, x, A, B, lg), lg};
            default: break;
        }
        throw domain_error("xprod: bad kind");
    }

    double eval(CrossProductKind k, double nu, double x) const { return eval_scaled(k, nu, x).value(); }

    // E = ht - g
    ScaledValue correction_e(double nu, double delta, double x) const {
        const ScaledBessel A = bessel_scaled(nu, dom_.R * x);
        const ScaledBessel B = bessel_scaled(nu, dom_.r * x);
        const double lg = detail::cross_scale(A, B);
        return {e_term(delta, x, A, B, lg), lg};
    }

    // h = j'(Rx)y'(rx) - j'(rx)y'(Rx) straight from the ultraspherical derivatives (no rescaling).
    double hfrak_direct(double nu, double delta, double x) const {
        const UltrasphericalQuad a = ultraspherical(nu, delta, dom_.R * x);
        const UltrasphericalQuad b = ultraspherical(nu, delta, dom_.r * x);
        return a.jp * b.yp - b.jp * a.yp;
    }

    // ht(z) for complex z, |z| <= 50.
    ComplexSeriesValue eval_complex_htilde(double nu, double delta, std::complex<double> z) const {
        if (dom_.is_ball()) throw domain_error("xprod: complex evaluation needs a shell");
        if (nu < std::fabs(delta)) throw domain_error("xprod: need nu >= |delta|");
        if (std::abs(z) > kComplexRadiusCap) throw domain_error("xprod: |z| exceeds 50");
        const bool regular = std::fabs(nu - std::fabs(delta)) < 1e-14;
        if (z == 0.0) {
            if (!regular) throw domain_error("xprod: ht has a pole at 0 when nu != |delta|");
            // even in z: Richardson on h and 2h
            const double h = 1e-3;
            const ComplexSeriesValue a = eval_complex_htilde(nu, delta, h);
            const ComplexSeriesValue b = eval_complex_htilde(nu, delta, 2.0 * h);
            ComplexSeriesValue out;
            out.re = (4.0 * a.re - b.re) / 3.0;
            out.im = 0.0;
            out.condition_estimate = std::max(a.condition_estimate, b.condition_estimate);
            return out;
        }
        if (z.real() < 0.0) z = -z;  // ht is even
        ComplexSeriesValue out;
        if (dom_.r * std::abs(z) >= kHankelCut) out = htilde_hankel(nu, delta, z);
        else out = htilde_series(nu, delta, z);
        if (!out.reliable()) throw unreliable_evaluation("xprod: ht condition estimate above 1e12");
        return out;
    }

private:
    double e_term(double delta, double x, const ScaledBessel& A, const ScaledBessel& B, double lg) const {
        if (delta == 0.0) return 0.0;
        const double R = dom_.R, r = dom_.r;
        const double f = detail::cross_at(A, 0, B, 0, lg);
        const double m1 = detail::cross_at(A, 0, B, 1, lg);
        const double m2 = detail::cross_at(A, 1, B, 0, lg);
        return delta * delta / (R * r * x * x) * f - delta / (R * x) * m1 - delta / (r * x) * m2;
    }

    double htilde(double delta, double nu, double x, const ScaledBessel& A, const ScaledBessel& B,
                  double lg) const {
        const double R = dom_.R, r = dom_.r;
        if (r * x >= nu) return detail::cross_at(A, 1, B, 1, lg) + e_term(delta, x, A, B, lg);
        // evanescent side: (J'_R - d J_R/(Rx))(Y'_r - d Y_r/(rx)) - (J'_r - d J_r/(rx))(Y'_R - d Y_R/(Rx))
        const double ua = A.jp - delta * A.j / (R * x), va = A.yp - delta * A.y / (R * x);
        const double ub = B.jp - delta * B.j / (r * x), vb = B.yp - delta * B.y / (r * x);
        return ua * vb * std::exp(A.log_j + B.log_y - lg) - ub * va * std::exp(B.log_j + A.log_y - lg);
    }

    static std::complex<double> cross_c(const std::complex<double>& ja, const std::complex<double>& yb,
                                        const std::complex<double>& jb, const std::complex<double>& ya,
                                        double& mag) {
        const std::complex<double> t1 = ja * yb, t2 = jb * ya;
        mag = std::abs(t1) + std::abs(t2);
        return t1 - t2;
    }

    ComplexSeriesValue assemble(double delta, std::complex<double> z, const std::array<std::complex<double>, 4>& c,
                                const std::array<double, 4>& mag) const {
        // c = {f, g, m1, m2}
        const double R = dom_.R, r = dom_.r;
        const std::complex<double> w1 = delta * delta / (R * r * z * z);
        const std::complex<double> w2 = -delta / (R * z);
        const std::complex<double> w3 = -delta / (r * z);
        const std::complex<double> v = c[1] + w1 * c[0] + w2 * c[2] + w3 * c[3];
        const double big = mag[1] + std::abs(w1) * mag[0] + std::abs(w2) * mag[2] + std::abs(w3) * mag[3];
        ComplexSeriesValue out;
        out.re = v.real();
        out.im = v.imag();
        out.condition_estimate = std::max(1.0, big / std::abs(v));
        return out;
    }

    ComplexSeriesValue htilde_series(double nu, double delta, std::complex<double> z) const {
        const detail::GaugeQuad A = detail::gauge_quad(nu, dom_.R, z);
        const detail::GaugeQuad B = detail::gauge_quad(nu, dom_.r, z);
        const auto ja = A.j.to_complex(), jpa = A.jp.to_complex(), ya = A.y.to_complex(), ypa = A.yp.to_complex();
        const auto jb = B.j.to_complex(), jpb = B.jp.to_complex(), yb = B.y.to_complex(), ypb = B.yp.to_complex();
        std::array<std::complex<double>, 4> c;
        std::array<double, 4> mag;
        c[0] = cross_c(ja, yb, jb, ya, mag[0]);
        c[1] = cross_c(jpa, ypb, jpb, ypa, mag[1]);
        c[2] = cross_c(ja, ypb, jpb, ya, mag[2]);
        c[3] = cross_c(jpa, yb, jb, ypa, mag[3]);
        return assemble(delta, z, c, mag);
    }

    ComplexSeriesValue htilde_hankel(double nu, double delta, std::complex<double> z) const {
        using std::numbers::pi;
        using cplx = std::complex<double>;
        const double R = dom_.R, r = dom_.r;
        const cplx a = R * z, b = r * z;
        cplx h1a[2], h2a[2], h1b[2], h2b[2];
        const double trunc =
            std::max(detail::hankel_reduced_recur(nu, a, h1a, h2a), detail::hankel_reduced_recur(nu, b, h1b, h2b));
        const cplx pref = (2.0 / pi) / (std::sqrt(R * r) * z) / cplx(0.0, 2.0);
        const cplx em = std::exp(cplx(0.0, -1.0) * (a - b)), ep = std::exp(cplx(0.0, 1.0) * (a - b));
        std::array<cplx, 4> c;
        std::array<double, 4> mag;
        const int P[4] = {0, 1, 0, 1}, Q[4] = {0, 1, 1, 0};
        for (int i = 0; i < 4; ++i) {
            const cplx t1 = pref * em * h2a[P[i]] * h1b[Q[i]];
            const cplx t2 = pref * ep * h1a[P[i]] * h2b[Q[i]];
            c[i] = t1 - t2;
            mag[i] = std::abs(t1) + std::abs(t2);
        }
        ComplexSeriesValue out = assemble(delta, z, c, mag);
        // truncation error in units of the rounding unit
        out.condition_estimate *= 1.0 + trunc / 1.1e-16;
        if (!std::isfinite(out.re) || !std::isfinite(out.im)) throw overflow_error("xprod: Hankel recurrence overflow");
        return out;
    }

    ShellDomain dom_;
};

// ---------------------------------------------------------------------------
// Main terms of the cross-product asymptotics, one per zero regime.

struct AsymptoticPrediction {
    double main = 0.0;       // predicted value (times exp(log_scale))
    double phase = 0.0;      // argument of the sine over pi (evanescent: cal_g)
    double errbound = 0.0;   // fitted constant * displayed error order, same scale as main
    double log_scale = 0.0;
};

// max |exact - main| / (|amp| * order) over (r, R, d) = (1, 2, 3), nu in {60, 120, 240}, 2000 points
// per regime, times 1.25; the Neumann values cover both G and H.
inline double fitted_error_constant(Kind k, ZeroRegime reg) {
    const bool dir = k == Kind::F_DIRICHLET;
    switch (reg) {
        case ZeroRegime::oscillatory: return dir ? 0.9 : 2.2;
        case ZeroRegime::pre_transition: return dir ? 0.1 : 0.25;
        case ZeroRegime::transition: return dir ? 0.55 : 1.3;
        case ZeroRegime::evanescent: return dir ? 1.0 : 1.5;
    }
    return 1.0;
}

inline AsymptoticPrediction asymptotic_predict(const ShellDomain& dom, CrossProductKind k, double nu, double x,
                                               ZeroRegime regime, const RegimeKnobs& knobs = {}) {
    using std::numbers::pi;
    if (k.is_ball()) throw out_of_regime("asymptotic_predict: shell kinds only");
    const PhaseGeometry geom(dom);
    const double R = dom.R, r = dom.r, rx = r * x, Rx = R * x;
    if (classify_regime(nu, rx, knobs) != regime) throw out_of_regime("asymptotic_predict: (nu, x) outside the regime");
    if (Rx <= nu) throw out_of_regime("asymptotic_predict: need Rx > nu");
    const bool dir = k.kind == Kind::F_DIRICHLET;
    const double cg = geom.cal_g(nu, x);
    const double KK = fitted_error_constant(k.kind, regime);
    const double qR = std::sqrt(std::sqrt(Rx * Rx - nu * nu));
    AsymptoticPrediction out;
    switch (regime) {
        case ZeroRegime::oscillatory:
        case ZeroRegime::pre_transition: {
            if (regime == ZeroRegime::oscillatory && rx < 10.0) throw out_of_regime("asymptotic_predict: need rx >= 10");
            const double qr = std::sqrt(std::sqrt(rx * rx - nu * nu));
            const double amp = dir ? -2.0 / (pi * qR * qr) : -2.0 / (pi * R * r) * qR * qr / (x * x);
            out.phase = cg;
            out.main = amp * std::sin(pi * cg);
            const double order = regime == ZeroRegime::oscillatory ? 1.0 / x : std::pow(transition_z(nu, rx), -1.5);
            out.errbound = KK * std::fabs(amp) * order;
            return out;
        }
        case ZeroRegime::transition: {
            const double z = transition_z(nu, rx);
            const AiryQuad a = airy_quad(-std::cbrt(2.0) * z);
            double amp, shift, order;
            if (dir) {
                amp = -std::pow(2.0, 5.0 / 6.0) / std::sqrt(pi) * std::hypot(a.ai, a.bi) / (std::cbrt(nu) * qR);
                shift = psi_phase(1, z);
                order = std::pow(nu, -2.0 / 3.0 + 2.5 * knobs.eps);
            } else {
                amp = -std::pow(2.0, 7.0 / 6.0) / std::sqrt(pi) * qR * std::hypot(a.aip, a.bip) /
                      (std::pow(nu, 2.0 / 3.0) * Rx);
                shift = -psi_phase(2, z);
                order = std::pow(nu, -2.0 / 3.0 + 2.75 * knobs.eps);
            }
            out.phase = cg + shift;
            out.main = amp * std::sin(pi * out.phase);
            out.errbound = KK * std::fabs(amp) * order;
            return out;
        }
        case ZeroRegime::evanescent: {
            const ScaledBessel B = bessel_scaled(nu, rx);
            const double s = std::pow(1.5 * pi * cg, 2.0 / 3.0);
            const AiryQuad a = airy_quad(-s);
            const double w = std::pow(12.0 * pi * cg, 1.0 / 6.0);
            double amp, order;
            if (dir) {
                amp = B.y * w / qR;
                out.main = amp * a.ai;
                order = std::pow(nu, -4.0 / 3.0) * std::max(1.0, std::pow(cg, 1.0 / 6.0));
            } else {
                amp = -2.0 * B.yp * qR / (Rx * w);
                out.main = amp * a.aip;
                order = std::pow(nu, -2.0 / 3.0) * std::min(1.0, std::pow(cg, -1.0 / 6.0));
            }
            out.phase = cg;
            out.log_scale = B.log_y;
            out.errbound = KK * std::fabs(amp) * order;
            return out;
        }
    }
    throw out_of_regime("asymptotic_predict: bad regime");
}

}  // namespace shellcount

#endif
