"""Regenerates frozen.hpp: reference values computed with mpmath at 40 digits.

Run from this directory: python3 gen_frozen.py > frozen.hpp
"""
import mpmath as mp

mp.mp.dps = 40
R, r = mp.mpf(2), mp.mpf(1)


def quad(nu, x):
    nu, x = mp.mpf(nu), mp.mpf(x)
    return (mp.besselj(nu, x), mp.bessely(nu, x),
            mp.besselj(nu, x, derivative=1), mp.bessely(nu, x, derivative=1))


def ujp(nu, d, t):
    return t ** (-d) * (mp.besselj(nu, t, derivative=1) - d * mp.besselj(nu, t) / t)


def uyp(nu, d, t):
    return t ** (-d) * (mp.bessely(nu, t, derivative=1) - d * mp.bessely(nu, t) / t)


def f(nu, x):
    return mp.besselj(nu, R * x) * mp.bessely(nu, r * x) - mp.besselj(nu, r * x) * mp.bessely(nu, R * x)


def g(nu, x):
    jd = lambda t: mp.besselj(nu, t, derivative=1)
    yd = lambda t: mp.bessely(nu, t, derivative=1)
    return jd(R * x) * yd(r * x) - jd(r * x) * yd(R * x)


def ht(nu, d, x):
    h = ujp(nu, d, R * x) * uyp(nu, d, r * x) - ujp(nu, d, r * x) * uyp(nu, d, R * x)
    return (R * r) ** d * x ** (2 * d) * h


def zeros(fn, lo, count, step=mp.mpf("0.01")):
    out, x, fx = [], mp.mpf(lo), fn(mp.mpf(lo))
    while len(out) < count:
        xn = x + step
        fn_ = fn(xn)
        if fx * fn_ < 0:
            out.append(mp.findroot(fn, (x, xn), solver="anderson"))
        x, fx = xn, fn_
    return out


def s(v):
    return mp.nstr(v, 25, min_fixed=-5, max_fixed=5)


def arr(name, rows):
    print(f"inline constexpr double {name}[][{len(rows[0])}] = {{")
    for row in rows:
        print("    {" + ", ".join(s(v) for v in row) + "},")
    print("};")


print("// Generated by gen_frozen.py (mpmath, 40 digits). Do not edit.")
print("#pragma once\n\nnamespace frozen {\n")

pts = [(0, 2), (0.5, mp.pi / 2), (10, 30), (0.5, 1), (3.7, 0.2), (40, 35), (2.5, 150), (25, 26), (60, 90), (1, "0.001")]
print("// nu, x, J, Y, J', Y'")
arr("bessel", [(mp.mpf(n), mp.mpf(x)) + quad(n, x) for n, x in pts])

print("// nu, x, log|J'|, log|Y'|, J'/Y'")
rows = []
for n, x in [(100, 50), (200, 100), (30, 10)]:
    _, _, jp, yp = quad(n, x)
    rows.append((n, x, mp.log(abs(jp)), mp.log(abs(yp)), jp / yp))
arr("bessel_log", rows)

print("// t, Ai, Ai', Bi, Bi'")
arr("airy", [(mp.mpf(t), mp.airyai(t), mp.airyai(t, derivative=1), mp.airybi(t), mp.airybi(t, derivative=1))
             for t in ["-20.5", "-3", "0", "1.7", "8"]])

print("// nu, re z, im z, re J, im J, re Y, im Y")
rows = []
for n, z in [(2, mp.mpc(3, 4)), (0, mp.mpc(1, 2)), (1.3, mp.mpc(-2, 5)), (0, mp.mpc(0, 1)), (3, mp.mpc(7, -1))]:
    J, Y = mp.besselj(n, z), mp.bessely(n, z)
    rows.append((n, z.real, z.imag, J.real, J.imag, Y.real, Y.imag))
arr("complex_bessel", rows)

print("// nu, delta, x, j, y, j', y' (ultraspherical)")
rows = []
for n, d, x in [(1.5, 0.5, 5), (0.5, 0.5, mp.pi), (7, 1, 3.3)]:
    n, d, x = mp.mpf(n), mp.mpf(d), mp.mpf(x)
    rows.append((n, d, x, x ** -d * mp.besselj(n, x), x ** -d * mp.bessely(n, x), ujp(n, d, x), uyp(n, d, x)))
arr("ultraspherical", rows)

print("// (r, R) = (1, 2): nu, delta, x, f, g, ht")
rows = []
for n, d, x in [(0, 0, 3), (2.5, 0.5, 7.3), (12.25, 1, 20), (0.7, 0.5, 0.9), (4, 0.5, 11.5)]:
    n, d, x = mp.mpf(n), mp.mpf(d), mp.mpf(x)
    rows.append((n, d, x, f(n, x), g(n, x), ht(n, d, x)))
arr("cross", rows)

print("// (r, R) = (1, 2), evanescent: nu, delta, x, log|f|, sign f, log|ht|, sign ht")
rows = []
for n, d, x in [(50, 0.5, 40), (120, 0.5, 80)]:
    n, d, x = mp.mpf(n), mp.mpf(d), mp.mpf(x)
    fv, hv = f(n, x), ht(n, d, x)
    rows.append((n, d, x, mp.log(abs(fv)), mp.sign(fv), mp.log(abs(hv)), mp.sign(hv)))
arr("cross_log", rows)

print("// (r, R) = (1, 2), complex: nu, delta, re z, im z, re ht, im ht")
rows = []
for n, d, z in [(0.7, 0.5, mp.mpc(3, 1.5)), (2, 0.5, mp.mpc(13, 2)), (6, 0, mp.mpc(20, 5)), (3.5, 1, mp.mpc(9, -4)),
                (10.5, 0.5, mp.mpc(14, 0.5))]:
    n, d = mp.mpf(n), mp.mpf(d)
    v = ht(n, d, z)
    rows.append((n, d, z.real, z.imag, v.real, v.imag))
arr("complex_ht", rows)

print("// first zeros on (r, R) = (1, 2): f_0, f_3.5, g_0 (k >= 1), ht_{2.5, 0.5} (k >= 0), ht_{0.5, 0.5} (k >= 1)")
arr("zeros_f0", [zeros(lambda x: f(0, x), "0.05", 5)])
arr("zeros_f35", [zeros(lambda x: f(mp.mpf("3.5"), x), "0.05", 5)])
arr("zeros_g0", [zeros(lambda x: g(0, x), "0.05", 5)])
arr("zeros_h25", [zeros(lambda x: ht(mp.mpf("2.5"), mp.mpf("0.5"), x), "0.05", 5)])
arr("zeros_h05", [zeros(lambda x: ht(mp.mpf("0.5"), mp.mpf("0.5"), x), "0.05", 5)])

print("// unit ball: zeros of j'_{3.5, 0.5} (k >= 0) and of J_{2.5}")
arr("zeros_ball_jp", [zeros(lambda t: ujp(mp.mpf("3.5"), mp.mpf("0.5"), t), "0.5", 5)])
arr("zeros_ball_j", [[mp.besseljzero(mp.mpf("2.5"), k) for k in range(1, 6)]])

print("// theta*")
fx = lambda x: -mp.mpf(8) / 25 * x - (mp.sqrt(2 * (1 - 14 * x)) - 5 * mp.sqrt(-1 - 8 * x)) ** 2 / 200 + mp.mpf(51) / 200 + x
print(f"inline constexpr double theta_star = {s(mp.re(-mp.findroot(fx, -0.31)))};")

print("// (r, R) = (1, 2): G(0.3), G(1.5), H(0.1), F(5, 3.2)")
gfun = lambda u: (mp.sqrt(1 - u * u) - u * mp.acos(u)) / mp.pi
G = lambda x: R * gfun(x / R) - (r * gfun(x / r) if x < r else 0)
Hy = mp.findroot(lambda t: G(t) - mp.mpf("0.1"), 1.5)
Fx = mp.findroot(lambda x: x * G(5 / x) - mp.mpf("3.2"), 8)
print(f"inline constexpr double G_03 = {s(G(mp.mpf('0.3')))};")
print(f"inline constexpr double G_15 = {s(G(mp.mpf('1.5')))};")
print(f"inline constexpr double H_01 = {s(Hy)};")
print(f"inline constexpr double F_5_32 = {s(Fx)};")
print("\n}  // namespace frozen")
