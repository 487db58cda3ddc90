#!/usr/bin/env python3
"""Generate the constant tables used by zeta_engine.hpp.

Riemann-Siegel correction terms C0..C4: 

Psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p) is expanded about p = 1/2
(x = p - 1/2) by exact power-series division at 80 digits; the derivative
combinations defining C1..C4 are then formed on the series.  Output is a C++
header as polynomials in x^2 (odd ones carry a factor x), truncated where
the coefficient scaled by |x|^i at |x| = 1/2 drops below 1e-20.
"""
import sys
from mpmath import mp, mpf, pi, cos, sin, factorial

mp.dps = 80
DEG = 120


def series_cos_sin_x2(a):
    # cos(a x^2), sin(a x^2) as series in x
    c = [mpf(0)] * (DEG + 1)
    s = [mpf(0)] * (DEG + 1)
    for j in range(0, DEG // 2 + 1):
        term = a ** j / factorial(j)
        if 2 * j > DEG:
            break
        if j % 4 == 0:
            c[2 * j] = term
        elif j % 4 == 1:
            s[2 * j] = term
        elif j % 4 == 2:
            c[2 * j] = -term
        else:
            s[2 * j] = -term
    return c, s


def series_cos_x(a):
    c = [mpf(0)] * (DEG + 1)
    for j in range(0, DEG + 1, 2):
        c[j] = (-1) ** (j // 2) * a ** j / factorial(j)
    return c


def divide(num, den):
    q = [mpf(0)] * (DEG + 1)
    for i in range(DEG + 1):
        acc = num[i]
        for j in range(1, i + 1):
            acc -= den[j] * q[i - j]
        q[i] = acc / den[0]
    return q


def deriv(c, times):
    out = list(c)
    for _ in range(times):
        out = [out[i + 1] * (i + 1) for i in range(len(out) - 1)] + [mpf(0)]
    return out


def combine(terms):
    out = [mpf(0)] * (DEG + 1)
    for coef, ser in terms:
        for i in range(DEG + 1):
            out[i] += coef * ser[i]
    return out


def main():
    # Psi = -cos(2 pi x^2 - 5 pi / 8) / cos(2 pi x)
    c2, s2 = series_cos_sin_x2(2 * pi)
    ph = 5 * pi / 8
    num = [-(c2[i] * cos(ph) + s2[i] * sin(ph)) for i in range(DEG + 1)]
    den = series_cos_x(2 * pi)
    psi = divide(num, den)
    d = {n: deriv(psi, n) for n in range(13)}
    p2, p4, p6, p8 = pi ** 2, pi ** 4, pi ** 6, pi ** 8
    cs = [
        psi,
        combine([(-1 / (96 * p2), d[3])]),
        combine([(1 / (64 * p2), d[2]), (1 / (18432 * p4), d[6])]),
        combine([(-1 / (64 * p2), d[1]), (-1 / (3840 * p4), d[5]),
                 (-1 / (5308416 * p6), d[9])]),
        combine([(1 / (128 * p2), psi), (mpf(19) / (24576 * p4), d[4]),
                 (mpf(11) / (5898240 * p6), d[8]),
                 (1 / (2038431744 * p8), d[12])]),
    ]
    out = sys.stdout
    out.write("// Generated by tools/oracles/gen_constants.py. Do not edit.\n")
    out.write("#pragma once\n\n#include <array>\n\n")
    out.write("namespace zladder::detail {\n\n")
    out.write("// Riemann-Siegel corrections C_k(p) as polynomials in y = (p - 1/2)^2:\n")
    out.write("// C_k = P_k(y) for even k, (p - 1/2) P_k(y) for odd k.\n")
    for k, ser in enumerate(cs):
        comp = ser[k % 2::2]
        last = 0
        for i, v in enumerate(comp):
            if abs(v) * mpf(4) ** (-i) > mpf(10) ** -20:
                last = i
        vals = comp[: last + 1]
        out.write(f"inline constexpr std::array<double, {len(vals)}> kRsC{k} = {{\n")
        for v in vals:
            out.write(f"    {mp.nstr(v, 20, min_fixed=-1, max_fixed=-1)},\n")
        out.write("};\n\n")
    # B_{2j} / (2j)! for the Euler-Maclaurin tail and |B_{2j}| for the theta series
    from mpmath import bernoulli
    jmax = 60
    out.write(f"// B_{{2j}} / (2j)! for j = 1..{jmax} (index 0 holds j = 1).\n")
    out.write(f"inline constexpr std::array<double, {jmax}> kBernoulliOverFactorial = {{\n")
    for j in range(1, jmax + 1):
        out.write(f"    {mp.nstr(bernoulli(2 * j) / factorial(2 * j), 20, min_fixed=-1, max_fixed=-1)},\n")
    out.write("};\n\n")
    tmax = 16
    out.write(f"// Theta asymptotic coefficients (1 - 2^(1-2k)) |B_2k| / (4k(2k-1)), k = 1..{tmax}.\n")
    out.write(f"inline constexpr std::array<double, {tmax}> kThetaSeries = {{\n")
    for k in range(1, tmax + 1):
        v = (1 - mpf(2) ** (1 - 2 * k)) * abs(bernoulli(2 * k)) / (4 * k * (2 * k - 1))
        out.write(f"    {mp.nstr(v, 20, min_fixed=-1, max_fixed=-1)},\n")
    out.write("};\n\n")
    out.write("}  // namespace zladder::detail\n")


if __name__ == "__main__":
    main()
