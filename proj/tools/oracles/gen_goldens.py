#!/usr/bin/env python3
"""Extended-precision reference values for the test suite.

Writes tests/golden/zeta_goldens.json. Run from the repository root:
    python3 tools/oracles/gen_goldens.py
"""
import json
import pathlib

import mpmath as mp

mp.mp.dps = 40

OUT = pathlib.Path(__file__).resolve().parents[2] / "tests" / "golden" / "zeta_goldens.json"

HEIGHTS = [10, 14.0, 14.2, 20, 30, 50, 100, 111.295, 200, 500, 1000, 2000, 5000, 1e4, 1e5, 1e6]
OFFLINE = [(2, 0), (4, 0), (0.5, 14.1347), (0.6, 50), (0.75, 100), (1.0, 1000), (1.5, 20), (2.0, 1e4), (0.55, 3000)]


def f(x):
    return float(x)


def theta_root():
    return mp.findroot(mp.siegeltheta, 17.8)


def first_zero_by_scan(lo=14.0, hi=14.2, step=mp.mpf("0.001")):
    # sign scan of Z, then bisection inside the bracketing cell
    t = mp.mpf(lo)
    prev = mp.siegelz(t)
    while t < hi:
        nxt = t + step
        cur = mp.siegelz(nxt)
        if mp.sign(cur) != mp.sign(prev):
            return mp.findroot(mp.siegelz, (t, nxt), solver="bisect")
        t, prev = nxt, cur
    raise RuntimeError("no sign change")


def hl_integral(T):
    # |zeta(1/2+it)|^2 integrated piecewise on unit cells
    pts = [mp.mpf(0)] + [mp.mpf(i) for i in range(1, int(T) + 1)]
    if pts[-1] != T:
        pts.append(mp.mpf(T))
    with mp.workdps(20):
        return mp.quad(lambda t: abs(mp.zeta(mp.mpf("0.5") + 1j * t)) ** 2, pts)


def main():
    out = {
        "theta_root": f(theta_root()),
        "first_zero": f(first_zero_by_scan()),
        "first_zero_mpmath": f(mp.im(mp.zetazero(1))),
        "points": [
            {"t": t, "Z": f(mp.siegelz(t)), "theta": f(mp.siegeltheta(t))} for t in HEIGHTS
        ],
        "offline": [],
        "hl_integral": [],
    }
    for sigma, t in OFFLINE:
        z = mp.zeta(mp.mpf(sigma) + 1j * mp.mpf(t))
        out["offline"].append({"sigma": sigma, "t": t, "re": f(mp.re(z)), "im": f(mp.im(z))})
    for T in (50, 100):
        out["hl_integral"].append({"T": T, "J": f(hl_integral(T))})
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(out, indent=2) + "\n")
    print("wrote", OUT)


if __name__ == "__main__":
    main()
