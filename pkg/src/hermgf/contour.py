"""Cauchy coefficient extraction on circles.

:func:`circle_quadrature` is the uniform trapezoidal rule for
``(1/(2 pi i)) \\oint f(t) dt`` on ``|t| = r``; for integrands analytic in an
annulus around the circle it converges geometrically in the node count.

Two Hermite representations are built on it:

* :func:`classic_contour_he` extracts ``He_n`` from the entire function
  ``exp(x t - t**2/2)``.  This is the trusted baseline.  Its only error source
  besides discretisation is cancellation: node values are of size
  ``n! exp(|x| r + r**2/2) / r**n`` while the result is ``He_n(x)``.  When that
  would cost more than ``MAX_DIGITS_LOST`` digits the nodes are evaluated in
  gmpy2 at a precision covering the loss.
* :func:`new_contour_he` runs the same extraction on the incomplete-gamma
  generating function, which has an essential singularity at ``t = 0``.
  Nothing guarantees that this converges to ``He_n``; the function measures
  and reports rather than asserting.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import gmpy2
import numpy as np

from .exceptions import DomainError, QuadratureOverflowError
from .genfun import SQRT2
from .hermite import he_eval
from .special_fn import SQRT_PI, erfcx_complex_masked

# Above this many lost digits the classical integrand switches to gmpy2.
MAX_DIGITS_LOST = 5.0
_GUARD_DIGITS = 20


class Branch(str, enum.Enum):
    """Continuation of ``sqrt(2 t**2)`` off the positive real axis."""

    SQRT2_TIMES_T = "sqrt2_times_t"
    ABS_LIKE_PRINCIPAL = "abs_like_principal"


@dataclass(frozen=True)
class ContourSpec:
    """Circle ``|t| = radius`` sampled at ``nodes`` equispaced points."""

    radius: float
    nodes: int = 4096
    branch: Branch = Branch.SQRT2_TIMES_T

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DomainError(f"radius must be positive, got {self.radius}")
        if int(self.nodes) != self.nodes or self.nodes < 16 or self.nodes % 2:
            raise DomainError(f"nodes must be an even integer >= 16, got {self.nodes}")
        object.__setattr__(self, "branch", Branch(self.branch))

    def points(self) -> np.ndarray:
        j = np.arange(self.nodes)
        return self.radius * np.exp(2j * np.pi * j / self.nodes)


def circle_quadrature(f, spec: ContourSpec) -> complex:
    """``(1/(2 pi i)) \\oint f(t) dt`` as ``mean(f(t_j) t_j)``.

    ``f`` receives the complex node array and must return an array of the
    same shape.  Terms are accumulated in node order.

    Raises
    ------
    QuadratureOverflowError
        If ``f`` is not finite at some node.
    """
    t = spec.points()
    with np.errstate(over="ignore", invalid="ignore"):
        vals = np.asarray(f(t), dtype=complex) * np.ones_like(t)
    bad = ~np.isfinite(vals)
    if bad.any():
        j = int(np.flatnonzero(bad)[0])
        raise QuadratureOverflowError(j, complex(t[j]))
    prod = vals * t
    return complex(math.fsum(prod.real), math.fsum(prod.imag)) / spec.nodes


# -- classical representation ----------------------------------------------


def digits_lost(nmax: int, x: float, radius: float) -> float:
    """Estimated decimal digits cancelled when extracting ``He_n``, ``n <= nmax``."""
    worst = 0.0
    for n in range(nmax + 1):
        lg = (math.lgamma(n + 1) + abs(x) * radius + 0.5 * radius**2 - n * math.log(radius)) / math.log(10)
        worst = max(worst, lg)
    return worst


def _classic_nodes_hp(x, spec, digits):
    bits = int(math.ceil((digits + _GUARD_DIGITS) * math.log2(10)))
    N = spec.nodes
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        two_pi = 2 * gmpy2.const_pi()
        r = gmpy2.mpfr(spec.radius)
        xm = gmpy2.mpfr(x)
        omega = [gmpy2.exp(gmpy2.mpc(0, two_pi * j / N)) for j in range(N)]
        G = [gmpy2.exp(xm * (r * w) - (r * w) ** 2 / 2) for w in omega]
    return bits, omega, G


def classic_contour_coefficients(nmax: int, x: float, spec: ContourSpec) -> np.ndarray:
    """``He_0(x) ... He_nmax(x)`` from one set of samples of ``exp(x t - t**2/2)``.

    Returns complex values; the imaginary parts are a noise diagnostic.
    """
    if nmax < 0:
        raise DomainError("nmax must be >= 0")
    lost = digits_lost(nmax, x, spec.radius)
    out = np.empty(nmax + 1, dtype=complex)
    if lost <= MAX_DIGITS_LOST:
        t = spec.points()
        G = np.exp(x * t - 0.5 * t * t)
        for n in range(nmax + 1):
            # (1/N) sum G_j t_j^{-n}, then n!
            out[n] = math.factorial(n) * circle_quadrature(lambda tt: G / tt ** (n + 1), spec)
        return out
    bits, omega, G = _classic_nodes_hp(x, spec, lost)
    N = spec.nodes
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        r = gmpy2.mpfr(spec.radius)
        for n in range(nmax + 1):
            acc = gmpy2.mpc(0)
            for j in range(N):
                acc += G[j] * omega[(-j * n) % N]
            val = acc * math.factorial(n) / (N * r**n)
            out[n] = complex(val)
    return out


def classic_contour_he(n: int, x: float, spec: ContourSpec) -> complex:
    """``He_n(x) = n!/(2 pi i) \\oint exp(x t - t**2/2) / t**(n+1) dt``."""
    return complex(classic_contour_coefficients(n, x, spec)[n])


# -- generating-function representation ------------------------------------


@dataclass(frozen=True)
class ContourDiagnostics:
    """Measurement record for one run of :func:`new_contour_he`."""

    n: int
    x: float
    radius: float
    nodes: int
    branch: str
    value: complex
    target: float
    error: float
    abs_error: float
    max_abs_integrand: float
    overflow_nodes: int
    first_overflow_node: int | None
    max_exponent: float

    def as_row(self) -> dict:
        return {
            "n": self.n, "x": self.x, "radius": self.radius, "nodes": self.nodes,
            "branch": self.branch, "value_re": self.value.real, "value_im": self.value.imag,
            "target": self.target, "error": self.error, "abs_error": self.abs_error,
            "max_abs_integrand": self.max_abs_integrand, "overflow_nodes": self.overflow_nodes,
            "max_exponent": self.max_exponent,
        }


def _sqrt_2t2(t, branch):
    if branch is Branch.SQRT2_TIMES_T:
        return SQRT2 * t
    return np.sqrt(2.0 * t * t)  # principal root, cut along the imaginary t axis


def new_gf_integrand(n: int, x: float, t: np.ndarray, branch: Branch):
    """``g(x, t) / t**(n+1)`` on complex ``t`` with ``g = sqrt(pi) erfcx(w) / sqrt(2 t**2)``.

    ``w = (1 - x t) / sqrt(2 t**2)``.  For the ``sqrt2_times_t`` branch this is
    ``exp(z) Gamma(1/2, z) / (sqrt(2) t**(n+2))``.  Returns
    ``(values, overflow_mask, exponents)`` with NaN at overflowing nodes.
    """
    root = _sqrt_2t2(t, Branch(branch))
    w = (1.0 - x * t) / root
    ex, overflow, w2 = erfcx_complex_masked(w)
    with np.errstate(over="ignore", invalid="ignore"):
        vals = SQRT_PI * ex / (root * t ** (n + 1))
    return vals, overflow, w2


def new_contour_he(n: int, x: float, spec: ContourSpec) -> tuple[complex, ContourDiagnostics]:
    """Coefficient extraction from the incomplete-gamma generating function.

    Overflowing nodes do not raise: they are counted in the diagnostics and
    the value is reported as complex NaN.
    """
    if n < 0:
        raise DomainError("n must be >= 0")
    t = spec.points()
    vals, overflow, w2 = new_gf_integrand(n, x, t, spec.branch)
    finite = np.isfinite(vals)
    n_over = int(np.count_nonzero(~finite))
    if n_over:
        value = complex(math.nan, math.nan)
    else:
        prod = vals * t
        value = complex(math.fsum(prod.real), math.fsum(prod.imag)) / spec.nodes
    target = float(he_eval(n, float(x)))
    mags = np.abs(vals[finite])
    first = int(np.flatnonzero(~finite)[0]) if n_over else None
    diag = ContourDiagnostics(
        n=n, x=float(x), radius=spec.radius, nodes=spec.nodes, branch=spec.branch.value,
        value=value, target=target, error=value.real - target,
        abs_error=abs(value - target) if not cmath.isnan(value) else math.nan,
        max_abs_integrand=float(mags.max()) if mags.size else math.nan,
        overflow_nodes=n_over, first_overflow_node=first,
        max_exponent=float(np.max(w2.real)),
    )
    return value, diag


def new_contour_table(ns=range(5), xs=(0.0, 0.5, 1.0), radii=(0.02, 0.05, 0.1),
                      branches=tuple(Branch), nodes: int = 4096) -> list[ContourDiagnostics]:
    """Run :func:`new_contour_he` over a grid; rows in deterministic order."""
    rows = []
    for branch in branches:
        for r in radii:
            spec = ContourSpec(r, nodes, branch)
            for x in xs:
                for n in ns:
                    rows.append(new_contour_he(n, x, spec)[1])
    return rows
