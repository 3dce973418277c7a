#ifndef SHELLCOUNT_DD_HPP
#define SHELLCOUNT_DD_HPP

// Double-double arithmetic (Dekker/Knuth error-free transforms), real and complex.

#include <cmath>
#include <complex>

namespace shellcount {

struct dd {
    double hi = 0.0;
    double lo = 0.0;

    constexpr dd() = default;
    constexpr dd(double h) : hi(h), lo(0.0) {}
    constexpr dd(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

namespace detail {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double e = (a - (s - bb)) + (b - bb);
    return {s, e};
}

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace detail

inline dd operator+(dd a, dd b) {
    dd s = detail::two_sum(a.hi, b.hi);
    dd t = detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return detail::quick_two_sum(s.hi, s.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
    dd p = detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return detail::quick_two_sum(p.hi, p.lo);
}

inline dd operator/(dd a, dd b) {
    double q1 = a.hi / b.hi;
    dd r = a - b * dd(q1);
    double q2 = r.hi / b.hi;
    r = r - b * dd(q2);
    double q3 = r.hi / b.hi;
    dd q = detail::quick_two_sum(q1, q2);
    return q + dd(q3);
}

inline dd& operator+=(dd& a, dd b) { return a = a + b; }
inline dd& operator-=(dd& a, dd b) { return a = a - b; }
inline dd& operator*=(dd& a, dd b) { return a = a * b; }
inline dd& operator/=(dd& a, dd b) { return a = a / b; }

inline double abs(dd a) { return std::fabs(a.hi + a.lo); }

struct cdd {
    dd re;
    dd im;

    cdd() = default;
    cdd(dd r, dd i = dd()) : re(r), im(i) {}
    cdd(std::complex<double> z) : re(z.real()), im(z.imag()) {}

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

inline cdd operator+(const cdd& a, const cdd& b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(const cdd& a, const cdd& b) { return {a.re - b.re, a.im - b.im}; }
inline cdd operator-(const cdd& a) { return {-a.re, -a.im}; }
inline cdd operator*(const cdd& a, const cdd& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline cdd operator*(const cdd& a, dd s) { return {a.re * s, a.im * s}; }
inline cdd operator/(const cdd& a, dd s) { return {a.re / s, a.im / s}; }
inline cdd operator/(const cdd& a, const cdd& b) {
    dd den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
inline cdd& operator+=(cdd& a, const cdd& b) { return a = a + b; }
inline cdd& operator*=(cdd& a, const cdd& b) { return a = a * b; }

inline double abs(const cdd& a) { return std::abs(a.to_complex()); }

}  // namespace shellcount

#endif
