"""Identity suites behind ``hermgf verify``.

Each suite returns :class:`IdentityReport` rows, one per identity, carrying
the worst residual over its sweep.  Random sweeps draw from
``numpy.random.default_rng(seed)`` so reports are reproducible.
"""

from __future__ import annotations

import math

import numpy as np

from .bivariate import MixMatrix, he2_coeff, he2_grid, he2_magnitude, series_product_oracle
from .cdf_link import cdf_asymptotic, divergence_turnaround, squared_identity_residual
from .contour import (
    Branch, ContourSpec, circle_quadrature, classic_contour_coefficients, new_contour_table,
)
from .genfun import (
    GenFunPoint, asymptotic_order_check, characteristic_check_g, classic_checks, g_closed,
    g_closed_gamma, g_gradient, pde_residual, pde_scale, remainder_leading_order,
    superasymptotic_check, t_from_z,
)
from .hermite import he_eval, he_sequence
from .report import IdentityReport
from .special_fn import SQRT_PI, erfc, erfcx, gamma_half_upper, gamma_half_upper_scaled

# Value the series expansion gives at z = 1200 and the value quoted for it in
# the source derivation; the latter is not reproducible.
Z1200_EXPECTED = 1.0200
Z1200_QUOTED = 0.994


def _row(identity_id, inputs, residual, tolerance, notes=""):
    return IdentityReport(identity_id, inputs, float(residual), float(tolerance), None, notes)


def _rel(a, b, floor=0.0):
    return abs(a - b) / max(abs(b), floor) if max(abs(b), floor) > 0 else abs(a - b)


# -- hermite ---------------------------------------------------------------


def suite_hermite(seed: int = 0) -> list[IdentityReport]:
    rng = np.random.default_rng(seed)
    xs = rng.uniform(-10.0, 10.0, 500)
    nmax = 50
    seq = np.array(he_sequence(nmax + 1, xs))  # rows: degree
    worst_rec = worst_der = 0.0
    for n in range(1, nmax + 1):
        a, b, c = n * seq[n - 1], seq[n + 1], xs * seq[n]
        scale = np.maximum.reduce([abs(a), abs(b), abs(c)])
        worst_rec = max(worst_rec, float(np.max(abs(a + b - c) / scale)))
        # derivative as x He_n - He_{n+1} against n He_{n-1}
        deriv = xs * seq[n] - seq[n + 1]
        worst_der = max(worst_der, float(np.max(abs(deriv - a) / scale)))
    inputs = {"nmax": nmax, "samples": 500, "xmin": -10.0, "xmax": 10.0, "seed": seed}
    return [
        _row("he.recurrence", inputs, worst_rec, 1e-12, "|n He_{n-1} + He_{n+1} - x He_n| / max term"),
        _row("he.derivative", inputs, worst_der, 1e-12, "He_n' = n He_{n-1}, scaled by max term"),
    ]


# -- special functions -----------------------------------------------------


def suite_special(seed: int = 0) -> list[IdentityReport]:
    xs = np.linspace(0.0, 6.0, 601)
    gam = max(abs(SQRT_PI * erfc(float(x)) - gamma_half_upper(float(x) ** 2)) for x in xs)
    refl = max(abs(erfc(float(x)) + erfc(float(-x)) - 2.0) for x in np.linspace(-6.0, 6.0, 1201))
    # erfcx against the independent continued-fraction / series route
    ys = np.linspace(0.0, 30.0, 601)
    route = max(_rel(float(erfcx(float(y))), gamma_half_upper_scaled(float(y) ** 2) / SQRT_PI)
                for y in ys)
    return [
        _row("sf.erfc_gamma", {"xmin": 0.0, "xmax": 6.0, "points": 601}, gam, 1e-14,
             "|sqrt(pi) erfc(x) - Gamma(1/2, x^2)|"),
        _row("sf.erfc_reflection", {"xmin": -6.0, "xmax": 6.0, "points": 1201}, refl, 1e-14,
             "|erfc(x) + erfc(-x) - 2|"),
        _row("sf.erfcx_routes", {"xmin": 0.0, "xmax": 30.0, "points": 601}, route, 1e-13,
             "erfcx vs exp(z) Gamma(1/2, z) / sqrt(pi), relative"),
    ]


# -- generating function ---------------------------------------------------


def _positive_points(rng, count, xlim=3.0, tlim=0.9):
    pts = []
    while len(pts) < count:
        x, t = rng.uniform(-xlim, xlim), rng.uniform(-tlim, tlim)
        if abs(t) > 1e-3 and 1.0 - x * t > 0:
            pts.append(GenFunPoint(x, t))
    return pts


def suite_genfun(seed: int = 0) -> list[IdentityReport]:
    rng = np.random.default_rng(seed)
    rows = []

    pts = _positive_points(rng, 1000)
    routes = max(_rel(g_closed_gamma(p), g_closed(p)) for p in pts)
    rows.append(_row("gf.closed_routes", {"points": 1000, "seed": seed}, routes, 1e-13,
                     "erfcx route vs scaled incomplete-gamma route"))

    pde = max(abs(pde_residual(p)) / pde_scale(p) for p in pts)
    n_neg = sum(p.t < 0 for p in pts)
    rows.append(_row("gf.pde", {"points": 1000, "negative_t": n_neg, "seed": seed}, pde, 1e-11,
                     "t^2 g_t - g_x + t g, scaled by term sizes"))

    worst = 0.0
    for _ in range(200):
        sgn = rng.choice([-1.0, 1.0])
        u = -sgn * rng.uniform(0.2, 5.0)  # u t < 0 keeps both points on the positive branch
        t1, t2 = sgn * rng.uniform(0.05, 1.0, 2)
        p1, p2 = GenFunPoint(u + 1.0 / t1, t1), GenFunPoint(u + 1.0 / t2, t2)
        # t g depends only on u; compare against the first point
        worst = max(worst, characteristic_check_g(p1, p2) / abs(p1.t * g_closed(p1)))
    rows.append(_row("gf.characteristic", {"pairs": 200, "seed": seed}, worst, 1e-12,
                     "t g constant along x - 1/t"))

    cpde = cinv = 0.0
    for _ in range(200):
        x, t = rng.uniform(-2.0, 2.0, 2)
        c = classic_checks(x, t)
        G = math.exp(x * t - 0.5 * t * t)
        cpde = max(cpde, abs(c.pde_residual) / (G * (abs(t) + abs(x - t) + abs(x))))
        x2 = x + rng.uniform(-1.0, 1.0)
        c2 = classic_checks(x2, x2 - c.u)
        cinv = max(cinv, _rel(c2.invariant, c.invariant))
    rows.append(_row("gf.classic_pde", {"points": 200, "seed": seed}, cpde, 1e-14,
                     "G_x + G_t - x G for exp(x t - t^2/2), scaled"))
    rows.append(_row("gf.classic_characteristic", {"pairs": 200, "seed": seed}, cinv, 1e-13,
                     "exp(-x^2/2) G constant along x - t"))

    worst = 0.0
    for p in pts[:200]:
        dt, dx = g_gradient(p)
        h = 1e-6 * max(1.0, abs(p.t)) * min(1.0, abs(p.t))
        fd_t = (g_closed(GenFunPoint(p.x, p.t + h)) - g_closed(GenFunPoint(p.x, p.t - h))) / (2 * h)
        hx = 1e-6 * max(1.0, abs(p.x))
        fd_x = (g_closed(GenFunPoint(p.x + hx, p.t)) - g_closed(GenFunPoint(p.x - hx, p.t))) / (2 * hx)
        g = g_closed(p)
        worst = max(worst, abs(fd_t - dt) / max(abs(dt), g / abs(p.t)),
                    abs(fd_x - dx) / max(abs(dx), g))
    rows.append(_row("gf.gradient", {"points": 200, "seed": seed}, worst, 1e-6,
                     "analytic partials vs central differences"))

    worst = 0.0
    degenerate = []
    for x in (0.0, 0.5, 2.0):
        for N in range(11):
            if he_eval(N + 1, x) == 0:
                degenerate.append(N)
                rs = remainder_leading_order(x, N, [1e-4])
            else:
                rs = asymptotic_order_check(x, N, [1e-4])
            worst = max(worst, max(r.deviation for r in rs))
    rows.append(_row("gf.remainder_order", {"t": 1e-4, "nmax": 10, "xs": "0|0.5|2"}, worst, 1e-2,
                     "(g - S_N)/t^(N+1) vs He_{N+1}; zero targets use the next nonzero order"))

    worst = 0.0
    for x in (0.0, 0.5, 2.0):
        for t in (0.05, 0.04, 0.03, -0.05):
            worst = max(worst, superasymptotic_check(x, t).ratio)
    rows.append(_row("gf.optimal_truncation", {"ts": "0.05|0.04|0.03|-0.05", "xs": "0|0.5|2"},
                     worst, 2.0, "error / smallest term envelope at optimal truncation"))

    worst = 0.0
    for t in (1e-2, 1e-3, 1e-4):
        worst = max(worst, abs(g_closed(GenFunPoint(1.0, t)) - 1.0) / (2 * t))
    rows.append(_row("gf.limit", {"x": 1.0, "ts": "1e-2|1e-3|1e-4"}, worst, 1.0,
                     "|g(1, t) - 1| / (2|t|)"))

    t = t_from_z(1200.0)
    g = g_closed(GenFunPoint(1.0, t))
    rows.append(_row("gf.z1200", {"z": 1200.0, "t": t, "g": g}, abs(g - Z1200_EXPECTED), 1e-3,
                     f"quoted value {Z1200_QUOTED} is not reproducible; difference {g - Z1200_QUOTED:.6f}"))
    return rows


# -- normal CDF ------------------------------------------------------------


def suite_cdf(seed: int = 0) -> list[IdentityReport]:
    rows = []
    for x, mu, N, tol in ((0.0, 10.0, 40, 1e-12), (1.0, 8.0, 30, 1e-9)):
        r = cdf_asymptotic(x, mu, N)
        rows.append(_row(f"cdf.series_mu{mu:g}", {"x": x, "mu": mu, "N": N}, r.rel_error, tol,
                         "series times normal density vs erfc-based CDF"))
    rows.append(_row("cdf.squared", {"x": 0.0, "mu": 10.0, "N": 40},
                     squared_identity_residual(0.0, 10.0, 40), 1e-10,
                     "Cauchy-product double sum vs squared Mills ratio"))
    k = divergence_turnaround(0.0, 3.0, 40)
    rows.append(_row("cdf.turnaround", {"x": 0.0, "mu": 3.0, "N": 40, "index": -1 if k is None else k},
                     0.0 if k is not None else 1.0, 0.0, "terms stop shrinking before N"))
    return rows


# -- bivariate -------------------------------------------------------------


def suite_bivariate(seed: int = 0) -> list[IdentityReport]:
    rng = np.random.default_rng(seed)
    I = MixMatrix.identity()
    worst = 0.0
    for _ in range(20):
        x, y = rng.uniform(-3.0, 3.0, 2)
        hx, hy = he_sequence(12, x), he_sequence(12, y)
        for n in range(13):
            for m in range(13 - n):
                worst = max(worst, _rel(he2_coeff(I, n, m, x, y), hx[n] * hy[m], he2_magnitude(I, n, m, x, y)))
    rows = [_row("bivar.identity", {"order": 12, "samples": 20, "seed": seed}, worst, 1e-12,
                 "M = I gives He_n(x) He_m(y)")]

    worst = worst_h = worst_s = 0.0
    for _ in range(50):
        M = MixMatrix(*(float(v) for v in rng.integers(-2, 3, 4)))
        x, y = rng.uniform(-2.0, 2.0, 2)
        grid = he2_grid(M, 8, x, y)
        oracle = series_product_oracle(M, x, y, 8).coeffs
        lam = float(rng.uniform(0.5, 2.0))
        Ml, Ms = M.scaled(lam), M.swapped()
        for n in range(9):
            for m in range(9 - n):
                mag = he2_magnitude(M, n, m, x, y)
                worst = max(worst, abs(grid[n, m] - oracle[n, m]) / mag if mag else abs(oracle[n, m]))
                if mag:
                    hl = he2_coeff(Ml, n, m, x, y)
                    worst_h = max(worst_h, abs(hl - lam ** (n + m) * grid[n, m]) / (lam ** (n + m) * mag))
                    worst_s = max(worst_s, abs(he2_coeff(Ms, m, n, y, x) - grid[n, m]) / mag)
    inputs = {"order": 8, "samples": 50, "seed": seed}
    rows.append(_row("bivar.oracle", inputs, worst, 1e-10, "binomial extraction vs truncated series product"))
    rows.append(_row("bivar.homogeneity", inputs, worst_h, 1e-12, "M -> lambda M scales by lambda^(n+m)"))
    rows.append(_row("bivar.swap", inputs, worst_s, 1e-12, "(t, x) <-> (s, y) with the swapped matrix"))
    return rows


# -- contour ---------------------------------------------------------------

CONTOUR_XS = (-2.0, -0.5, 0.0, 1.5, 3.0)


def suite_contour(seed: int = 0) -> list[IdentityReport]:
    rows = []
    spec = ContourSpec(1.0, 64)
    tay = max(abs(circle_quadrature(lambda t: np.exp(t) / t ** (k + 1), spec) - 1.0 / math.factorial(k))
              for k in range(8))
    tay = max(tay, max(abs(circle_quadrature(lambda t: np.cos(t) / t ** (k + 1), spec)
                           - ((-1) ** (k // 2) / math.factorial(k) if k % 2 == 0 else 0.0))
                       for k in range(8)))
    rows.append(_row("contour.taylor", {"radius": 1.0, "nodes": 64}, tay, 1e-13,
                     "Taylor coefficients of exp and cos"))

    worst_re = worst_im = worst_r = 0.0
    for x in CONTOUR_XS:
        by_r = []
        for r in (0.5, 1.0, 2.0):
            c = classic_contour_coefficients(12, x, ContourSpec(r, 4096))
            by_r.append(c)
            for n in range(13):
                h = he_eval(n, x)
                worst_re = max(worst_re, abs(c[n].real - h) / max(1.0, abs(h)))
                worst_im = max(worst_im, abs(c[n].imag) / max(1.0, abs(h)))
        for n in range(13):
            ref = by_r[1][n].real
            for c in (by_r[0], by_r[2]):
                worst_r = max(worst_r, abs(c[n].real - ref) / max(1.0, abs(ref)))
    inputs = {"nmax": 12, "nodes": 4096, "xs": "|".join(f"{x:g}" for x in CONTOUR_XS)}
    rows.append(_row("contour.classic", inputs, worst_re, 1e-9, "Re vs recurrence, relative (floor 1)"))
    rows.append(_row("contour.classic_imag", inputs, worst_im, 1e-9, "|Im| / max(1, |He_n|)"))
    rows.append(_row("contour.radius_invariance", {**inputs, "radii": "0.5|1|2"}, worst_r, 1e-9,
                     "r = 0.5 and 2 against r = 1"))

    first = [d.as_row() for d in new_contour_table()]
    again = [d.as_row() for d in new_contour_table()]
    same = all(_same_row(a, b) for a, b in zip(first, again)) and len(first) == len(again)
    over = sum(r["overflow_nodes"] > 0 for r in first)
    rows.append(_row("contour.experiment", {"rows": len(first), "branches": len(Branch), "overflowing_rows": over},
                     0.0 if same else 1.0, 0.0,
                     "measurement only: run completes and repeats bit-identically; no accuracy asserted"))
    return rows


def _same_row(a, b):
    for k in a:
        va, vb = a[k], b[k]
        if isinstance(va, float) and math.isnan(va) and math.isnan(vb):
            continue
        if va != vb:
            return False
    return True


SUITES = {
    "hermite": suite_hermite,
    "special": suite_special,
    "genfun": suite_genfun,
    "cdf": suite_cdf,
    "bivariate": suite_bivariate,
    "contour": suite_contour,
}


def run_suites(names, seed: int = 0) -> list[IdentityReport]:
    """Run the named suites (or ``["all"]``) and return rows sorted by id."""
    names = list(SUITES) if "all" in names else list(names)
    rows = []
    for name in names:
        if name not in SUITES:
            raise KeyError(name)
        rows.extend(SUITES[name](seed))
    return sorted(rows, key=lambda r: r.identity_id)
