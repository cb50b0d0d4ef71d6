"""Independent high-precision reference values for the unit tests.

Solves the barrier problem by plane-wave matching in mpmath, extracts
Laurent / Taylor coefficients with a trapezoid contour sum, and prints the
values as C++ initialisers. Output is pasted into unit/derived_values.hpp.

    python3 tests/oracle/derive_values.py > tests/unit/derived_values.hpp
"""
import mpmath as mp

mp.mp.dps = 50


def barrier_solution(z, a, L, k, left):
    """psi, psi' at x = a + L for psi = left-side data (value, slope) at x = a."""
    kap2 = z - k * k
    kap = mp.sqrt(kap2)
    if abs(kap2) < mp.mpf("1e-30"):
        ch, shc = mp.mpf(1), L
    else:
        ch, shc = mp.cosh(kap * L), mp.sinh(kap * L) / kap
    p0, d0 = left
    return p0 * ch + d0 * shc, p0 * kap2 * shc + d0 * ch


def barrier_m(z, a, L, k):
    """Transfer matrix: right plane-wave amplitudes = M @ left amplitudes."""
    b = a + L
    cols = []
    for sgn in (1, -1):
        e = mp.exp(sgn * 1j * k * a)
        p, d = barrier_solution(z, a, L, k, (e, sgn * 1j * k * e))
        ap = (d + 1j * k * p) / (2j * k) * mp.exp(-1j * k * b)
        bp = (1j * k * p - d) / (2j * k) * mp.exp(1j * k * b)
        cols.append((ap, bp))
    return [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]


def barrier_zero(z, a, L, ell):
    """a1, a2, b1, b2: right asymptotes of phi1 (=1 left) and phi2 (=x/ell left)."""
    out = []
    for p0, d0 in ((1, 0), (a / ell, 1 / ell)):
        p, d = barrier_solution(z, a, L, 0, (mp.mpf(p0), mp.mpf(d0)))
        b = a + L
        slope = d * ell
        out.append((p - d * b, slope))
    (a1, b1), (a2, b2) = out
    return a1, a2, b1, b2


def contour(f, m_lo, m_hi, r, n=256):
    """Taylor coefficients of f (scalar or 2x2 nested list) on |k| = r."""
    c = {m: 0 for m in range(m_lo, m_hi + 1)}
    for j in range(n):
        k = r * mp.expj(2 * mp.pi * j / n)
        v = mp.matrix(f(k)) if isinstance(f(k), list) else f(k)
        for m in c:
            c[m] += v * k ** (-m) / n
    return c


def cpp(z):
    z = mp.mpc(z)
    z = mp.mpc(0 if abs(z.real) < 1e-40 else z.real, 0 if abs(z.imag) < 1e-40 else z.imag)
    return "{%s, %s}" % (mp.nstr(z.real, 17, min_fixed=-30, max_fixed=30), mp.nstr(z.imag, 17, min_fixed=-30, max_fixed=30))


def mat(m):
    return "{%s, %s, %s, %s}" % (cpp(m[0][0]), cpp(m[0][1]), cpp(m[1][0]), cpp(m[1][1]))


cases = [("kRealBarrier", mp.mpf(2), mp.mpf("0.5"), mp.mpf(1), mp.mpf(1)),
         ("kComplexBarrier", mp.mpc(1, 1), mp.mpf(0), mp.mpf(1), mp.mpf("1.5"))]

print("#pragma once")
print("// Generated by tests/oracle/derive_values.py; do not edit by hand.")
print('#include "lowscat/numerics.hpp"')
print("namespace derived {")
print("using lowscat::Complex;")
print("using lowscat::Mat2C;")
print("struct BarrierCase { Complex z; double a, L, ell; Mat2C m_at_k[3]; Complex a1, a2, b1, b2, g1; Mat2C u[5]; Complex t[5]; };")
print("inline constexpr double kSampleK[3] = {0.05, 0.7, 3.0};")
for name, z, a, L, ell in cases:
    ms = [barrier_m(z, a, L, mp.mpf(k)) for k in ("0.05", "0.7", "3.0")]
    a1, a2, b1, b2 = barrier_zero(z, a, L, ell)
    lau = contour(lambda k: [[k * e for e in row] for row in barrier_m(z, a, L, k)], 0, 4, mp.mpf("0.5"))
    # lau[j] is the coefficient of k^j in k M(k), i.e. U^{(j-1)}.
    u = [[[lau[j][r, c] for c in range(2)] for r in range(2)] for j in range(5)]
    t = contour(lambda k: 1 / barrier_m(z, a, L, k)[1][1], 0, 4, mp.mpf("0.05"))
    # T = sum t_n (k ell)^n; order-3 term fixes g1.
    tn = [t[n] / ell ** n for n in range(5)]
    g1 = (a1 ** 2 + b2 ** 2 + a1 * b2 + 1 - tn[3] * b1 ** 3 / 2j) / b1
    print("inline const BarrierCase %s{" % name)
    print("  %s, %s, %s, %s," % (cpp(z), mp.nstr(a, 17), mp.nstr(L, 17), mp.nstr(ell, 17)))
    print("  {%s}," % ",\n   ".join(mat(m) for m in ms))
    print("  %s, %s, %s, %s, %s," % tuple(cpp(x) for x in (a1, a2, b1, b2, g1)))
    print("  {%s}," % ",\n   ".join(mat(x) for x in u))
    print("  {%s}};" % ", ".join(cpp(x) for x in tn))

# Half-line barrier reflection with gamma = (alpha + i beta)/(alpha - i beta).
print("struct HalfLineCase { Complex z; double a, L; Complex alpha, beta; double k; Complex r; };")
print("inline const HalfLineCase kHalfLine[] = {")
for z, a, alpha, beta, k in [(mp.mpf(3), mp.mpf("0.4"), 1, 0, mp.mpf("0.8")),
                             (mp.mpf(-2), mp.mpf("0.2"), 0, 1, mp.mpf("1.3")),
                             (mp.mpc(1, -0.5), mp.mpf("0.6"), mp.mpc(1, 0), mp.mpc("0.5", "0.2"), mp.mpf("0.3"))]:
    g = (alpha + 1j * beta) / (alpha - 1j * beta)
    m = barrier_m(z, a, mp.mpf(1), k)
    r = (m[0][0] - g * m[0][1]) / (m[1][0] - g * m[1][1])
    print("  {%s, %s, 1.0, %s, %s, %s, %s}," % (cpp(z), mp.nstr(a, 17), cpp(alpha), cpp(beta), mp.nstr(k, 17), cpp(r)))
print("};")
print("}  // namespace derived")
