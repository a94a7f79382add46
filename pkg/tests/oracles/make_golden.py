"""Regenerate tests/data/golden.json with mpmath at 50 digits.

Run from the repository root::

    python tests/oracles/make_golden.py

Nothing here imports the package under test.
"""

import json
import math
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50

OUT = Path(__file__).resolve().parents[1] / "data" / "golden.json"


def erfcx(w):
    w = mp.mpmathify(w)
    return mp.exp(w * w) * mp.erfc(w)


def g_closed(x, t):
    x, t = mp.mpf(x), mp.mpf(t)
    q = (1 - x * t) / (mp.sqrt(2) * abs(t))
    return mp.sqrt(mp.pi) / (mp.sqrt(2) * abs(t)) * erfcx(q)


def cplx(v):
    return [float(mp.re(v)), float(mp.im(v))]


def main():
    real_points = sorted(set(
        [i * 0.25 for i in range(0, 121)]
        + [7.999, 8.0, 8.001, 34.64101615137755, 50.0, 100.0, 1e3, 1e5, 1e8]
        + [-0.1, -0.5, -1.0, -2.5, -5.0, -10.0, -20.0, -26.0]
    ))
    erfcx_real = [[x, float(erfcx(mp.mpf(x)))] for x in real_points]

    erfc_points = [-6.0, -1.25, -0.3, 0.0, 0.3, 1.0, 1.25, 3.0, 6.0, 10.0, 26.0]
    erfc_vals = [[x, float(mp.erfc(mp.mpf(x)))] for x in erfc_points]

    cgrid = []
    for re in [0.0, 0.1, 0.5, 1.0, 2.0, 3.5, 5.0, 7.5, 10.0, 20.0]:
        for im in [-15.0, -8.0, -3.0, -1.0, -0.2, 0.0, 0.2, 1.0, 3.0, 8.0, 15.0]:
            cgrid.append([re, im])
    # left half-plane, away from the zeros of erfc near arg(w) = +-3pi/4
    for re, im in [(-0.5, 0.5), (-1.0, 0.3), (-2.0, 0.5), (-3.0, -0.7), (-0.3, 4.0),
                   (-0.2, -6.0), (-1.0, 6.0), (-5.0, 1.0), (-0.05, 20.0)]:
        cgrid.append([re, im])
    cgrid.append([2.0, 3.0])
    # the rational / continued-fraction boundary circle |w| = 8
    for k in range(25):
        ang = -math.pi / 2 + k * math.pi / 24
        cgrid.append([8.0 * math.cos(ang), 8.0 * math.sin(ang)])
    erfcx_complex = [[re, im] + cplx(erfcx(mp.mpc(re, im))) for re, im in cgrid]

    z_points = [0.0, 1e-8, 1e-3, 0.5, 1.0, 1.49, 1.5, 1.51, 2.0, 10.0, 100.0, 1200.0, 2000.0, 1e6]
    gamma_scaled = [[z, float(mp.exp(mp.mpf(z)) * mp.gammainc(0.5, mp.mpf(z)))] for z in z_points]
    gamma_upper = [[z, float(mp.gammainc(0.5, mp.mpf(z)))] for z in z_points if z <= 100]

    g_points = [(0.0, 0.1), (1.0, float(1 / (1 + mp.sqrt(2400)))), (1.0, float(1 / (1 + mp.sqrt(4000)))),
                (0.3, 0.05), (2.0, -0.2), (-1.5, 0.3), (0.5, 0.9), (-3.0, -0.7), (1.0, 1e-4)]
    g_vals = [[x, t, float(g_closed(x, t))] for x, t in g_points]
    # 1 - x t < 0: only the erfc form continues here
    g_ext = [[x, t, float(g_closed(x, t))] for x, t in [(5.0, 0.3), (2.0, 0.6), (-4.0, -0.5)]]

    ncdf = [[0.0, 10.0, 1.0, float(mp.ncdf(0, 10, 1))],
            [1.3, 0.4, 2.0, float(mp.ncdf(1.3, 0.4, 2.0))],
            [1.0, 8.0, 1.0, float(mp.ncdf(1, 8, 1))],
            [-3.0, 0.0, 1.0, float(mp.ncdf(-3, 0, 1))]]

    data = {
        "dps": mp.mp.dps,
        "erfc": erfc_vals,
        "erfcx_real": erfcx_real,
        "erfcx_complex": erfcx_complex,
        "gamma_half_upper_scaled": gamma_scaled,
        "gamma_half_upper": gamma_upper,
        "g_closed": g_vals,
        "g_closed_extended": g_ext,
        "normal_cdf": ncdf,
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1))
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
