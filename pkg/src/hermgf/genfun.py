"""The factorial-free generating function ``g(x, t) = sum_n t**n He_n(x)``.

Closed form::

    g(x, t) = exp(z) Gamma(1/2, z) / sqrt(2 t**2),   z = (1 - x t)**2 / (2 t**2)
            = sqrt(pi) / (sqrt(2) |t|) * erfcx((1 - x t) / (sqrt(2) |t|))

The second line keeps the sign of ``1 - x t`` and never forms ``exp(z)``.
It is the default evaluator; the first line is kept as an independent route
on the branch ``1 - x t > 0`` that the derivation assumes.

The series on the left diverges for every ``t != 0``.  It is an asymptotic
expansion of the closed form as ``t -> 0``, so the equality is checked at
two testable levels: the order of the remainder (:func:`asymptotic_order_check`)
and the error at optimal truncation (:func:`superasymptotic_check`).  Both need
more than double precision and run on gmpy2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import gmpy2

from .exceptions import DomainError, UsageError
from .hermite import he_eval
from .special_fn import SQRT_PI, erfcx, gamma_half_upper_scaled

SQRT2 = math.sqrt(2.0)

# Relative mismatch allowed between the u coordinates of two points that are
# supposed to lie on the same characteristic.
U_MATCH_RTOL = 1e-9


@dataclass(frozen=True)
class GenFunPoint:
    """An evaluation point ``(x, t)`` with ``t != 0``.

    Attributes
    ----------
    z : float
        ``(1 - x t)**2 / (2 t**2)``, the incomplete-gamma argument.
    q : float
        ``(1 - x t) / (sqrt(2) |t|)``, the signed square root of ``z``.
    u : float
        Characteristic coordinate ``x - 1/t``.
    series_domain : bool
        ``|x t| < 1``, where ``sum (x t)**n`` converges.  Recorded only.
    positive_branch : bool
        ``1 - x t > 0``.
    """

    x: float
    t: float
    z: float = field(init=False, repr=False)
    q: float = field(init=False, repr=False)
    u: float = field(init=False, repr=False)
    series_domain: bool = field(init=False, repr=False)
    positive_branch: bool = field(init=False, repr=False)

    def __post_init__(self):
        x, t = float(self.x), float(self.t)
        if not (math.isfinite(x) and math.isfinite(t)):
            raise DomainError(f"x and t must be finite, got x={x}, t={t}")
        if t == 0:
            raise DomainError("t = 0 is excluded (the closed form has an essential singularity there)")
        one_minus = 1.0 - x * t
        q = one_minus / (SQRT2 * abs(t))
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "z", q * q)
        object.__setattr__(self, "u", x - 1.0 / t)
        object.__setattr__(self, "series_domain", abs(x * t) < 1.0)
        object.__setattr__(self, "positive_branch", one_minus > 0)

    @property
    def branch(self) -> str:
        return "positive" if self.positive_branch else "extended"


def _require_branch(p, extended):
    if not isinstance(p, GenFunPoint):
        raise TypeError("expected a GenFunPoint")
    if not (p.positive_branch or extended):
        raise DomainError(
            f"1 - x t = {1 - p.x * p.t:.6g} <= 0 at x={p.x}, t={p.t}; pass extended=True "
            "to continue through the erfc form"
        )


def g_closed(p: GenFunPoint, *, extended: bool = False) -> float:
    """Closed-form generating function via erfcx.

    With ``extended=True`` points with ``1 - x t <= 0`` are accepted; the
    result may then be ``inf`` where ``exp(z)`` itself is unrepresentable.
    """
    _require_branch(p, extended)
    return SQRT_PI / (SQRT2 * abs(p.t)) * erfcx(p.q)


def g_closed_gamma(p: GenFunPoint) -> float:
    """Closed form through ``exp(z) Gamma(1/2, z) / sqrt(2 t**2)``.

    Positive branch only: ``z`` has lost the sign of ``1 - x t``.
    """
    _require_branch(p, False)
    return gamma_half_upper_scaled(p.z) / math.sqrt(2.0 * p.t * p.t)


def g_gradient(p: GenFunPoint, *, extended: bool = False) -> tuple[float, float]:
    """Analytic partials ``(dg/dt, dg/dx)``.

    ``dg/dt = -g/t - (1 - x t) g / t**3 + 1/t**3`` and
    ``dg/dx = -(1 - x t) g / t + 1/t``.
    """
    g = g_closed(p, extended=extended)
    t = p.t
    c = 1.0 - (1.0 - p.x * t) * g
    dx = c / t
    dt = c / t**3 - g / t
    return dt, dx


def pde_residual(p: GenFunPoint, *, extended: bool = False) -> float:
    """``t**2 dg/dt - dg/dx + t g``, which vanishes identically."""
    g = g_closed(p, extended=extended)
    dt, dx = g_gradient(p, extended=extended)
    return p.t**2 * dt - dx + p.t * g


def pde_scale(p: GenFunPoint, *, extended: bool = False) -> float:
    """Magnitude scale for :func:`pde_residual` (sum of term sizes)."""
    g = g_closed(p, extended=extended)
    dt, dx = g_gradient(p, extended=extended)
    return abs(p.t**2 * dt) + abs(dx) + abs(p.t * g)


def t_from_z(z: float, x: float = 1.0) -> float:
    """The ``t > 0`` on the positive branch with ``(1 - x t)**2 / (2 t**2) = z``."""
    if z < 0:
        raise DomainError("z must be >= 0")
    return 1.0 / (x + math.sqrt(2.0 * z))


# -- characteristics -------------------------------------------------------


def characteristic_check_g(p1: GenFunPoint, p2: GenFunPoint) -> float:
    """``|t1 g(p1) - t2 g(p2)|`` for two points with the same ``u = x - 1/t``.

    Raises
    ------
    UsageError
        If the points do not share a characteristic.
    """
    for p in (p1, p2):
        _require_branch(p, False)
    if abs(p1.u - p2.u) > U_MATCH_RTOL * max(1.0, abs(p1.u), abs(p2.u)):
        raise UsageError(f"points are on different characteristics: u1={p1.u!r}, u2={p2.u!r}")
    return abs(p1.t * g_closed(p1) - p2.t * g_closed(p2))


def classic_g(x: float, t: float) -> float:
    """Classical exponential generating function ``exp(x t - t**2/2)``."""
    return math.exp(x * t - 0.5 * t * t)


class ClassicChecks(NamedTuple):
    pde_residual: float
    invariant: float
    u: float


def classic_checks(x: float, t: float) -> ClassicChecks:
    """Residual of ``G_x + G_t = x G`` and the invariant ``exp(-x**2/2) G``.

    The invariant depends on ``(x, t)`` only through ``u = x - t``.
    """
    G = classic_g(x, t)
    dx = t * G
    dt = (x - t) * G
    return ClassicChecks(dx + dt - x * G, math.exp(-0.5 * x * x) * G, x - t)


# -- truncated series ------------------------------------------------------


@dataclass(frozen=True)
class TruncatedSeries1D:
    """Terms ``t**n He_n(x)`` for ``n <= N`` with running sums.

    ``n_star`` is the optimal truncation index: the smallest ``n < N`` that
    minimises the two-term envelope ``max(|term_n|, |term_{n+1}|)``, and
    ``min_term`` is that envelope value.  A bare argmin of ``|term_n|`` is
    unusable because ``He_n(x)`` has real zeros (``He_2(1) = 0``) that
    produce accidentally tiny terms; two consecutive terms cannot both sit
    near a zero.  For ``N = 0`` the only term is used.
    """

    terms: tuple
    partial_sums: tuple
    n_star: int
    min_term: object

    @classmethod
    def from_terms(cls, terms):
        terms = tuple(terms)
        sums = []
        acc = terms[0] * 0
        for v in terms:
            acc = acc + v
            sums.append(acc)
        mags = [abs(v) for v in terms]
        if len(mags) == 1:
            n_star, env = 0, mags[0]
        else:
            envelope = [max(mags[i], mags[i + 1]) for i in range(len(mags) - 1)]
            env = min(envelope)
            n_star = envelope.index(env)
        return cls(terms, tuple(sums), n_star, env)

    @property
    def N(self) -> int:
        return len(self.terms) - 1

    @property
    def optimal_sum(self):
        return self.partial_sums[self.n_star]


def _hp_context(bits):
    return gmpy2.context(gmpy2.get_context(), precision=int(bits))


def digits_to_bits(digits: float) -> int:
    return int(math.ceil(digits * math.log2(10.0))) + 8


def partial_sum(x: float, t: float, N: int, *, precision: int | None = None) -> TruncatedSeries1D:
    """Partial sums of ``sum_n t**n He_n(x)`` up to ``n = N``.

    ``precision`` (bits) switches to gmpy2 ``mpfr`` arithmetic; the inputs
    are converted exactly from their float values.
    """
    if t == 0:
        raise DomainError("t must be nonzero")
    if N < 0:
        raise DomainError("N must be >= 0")
    if precision is None:
        return _partial_sum(float(x), float(t), N)
    with _hp_context(precision):
        return _partial_sum(gmpy2.mpfr(x), gmpy2.mpfr(t), N)


def _partial_sum(x, t, N):
    terms = []
    power = t * 0 + 1
    prev, cur = power, x
    terms.append(prev)
    if N >= 1:
        power = power * t
        terms.append(power * cur)
    for k in range(1, N):
        prev, cur = cur, x * cur - k * prev
        power = power * t
        terms.append(power * cur)
    return TruncatedSeries1D.from_terms(terms)


def g_closed_hp(x: float, t: float, precision: int):
    """Closed form in gmpy2 at ``precision`` bits (positive branch only)."""
    p = GenFunPoint(x, t)
    _require_branch(p, False)
    with _hp_context(precision):
        xm, tm = gmpy2.mpfr(x), gmpy2.mpfr(t)
        at = abs(tm)
        q = (1 - xm * tm) / (gmpy2.sqrt(2) * at)
        return gmpy2.sqrt(gmpy2.const_pi()) / (gmpy2.sqrt(2) * at) * gmpy2.exp(q * q) * gmpy2.erfc(q)


class OrderRow(NamedTuple):
    t: float
    ratio: float
    target: float
    deviation: float


def asymptotic_order_check(x: float, N: int, t_list, *, precision: int | None = None) -> list[OrderRow]:
    """Rows of ``r(t) = (g(x, t) - S_N(x, t)) / t**(N+1)``.

    As ``t -> 0`` the ratio tends to ``He_{N+1}(x)`` (``target``);
    ``deviation`` is ``|ratio - target| / max(1, |target|)``.  The remainder
    is of size ``t**(N+1)`` next to ``g ~ 1``, so the difference is formed in
    gmpy2 with enough digits to resolve it.
    """
    target = float(he_eval(N + 1, float(x)))
    rows = []
    for t in t_list:
        if t == 0:
            raise DomainError("t must be nonzero")
        bits = precision
        if bits is None:
            bits = digits_to_bits((N + 2) * max(1.0, -math.log10(abs(t))) + 30)
        series = partial_sum(x, t, N, precision=bits)
        g = g_closed_hp(x, t, bits)
        with _hp_context(bits):
            ratio = float((g - series.partial_sums[N]) / gmpy2.mpfr(t) ** (N + 1))
        rows.append(OrderRow(float(t), ratio, target, abs(ratio - target) / max(1.0, abs(target))))
    return rows


class TruncationResult(NamedTuple):
    x: float
    t: float
    n_star: int
    min_term: object  # gmpy2.mpfr; can be far below the float range
    error: object
    ratio: float


def superasymptotic_check(x: float, t: float) -> TruncationResult:
    """Optimal-truncation error of the series at ``(x, t)``.

    Sums far enough to pass the smallest terms (about ``1/t**2`` of them) in
    enough precision to resolve the minimal term, roughly
    ``exp(-1/(2 t**2))``.  ``ratio`` is ``error / min_term``.
    """
    p = GenFunPoint(x, t)
    _require_branch(p, False)
    N = int(2.0 / (t * t)) + 20
    bits = digits_to_bits(1.0 / (2.0 * t * t * math.log(10.0)) + 40)
    series = partial_sum(x, t, N, precision=bits)
    g = g_closed_hp(x, t, bits)
    with _hp_context(bits):
        err = abs(g - series.optimal_sum)
        ratio = float(err / series.min_term) if series.min_term != 0 else math.inf
    return TruncationResult(float(x), float(t), series.n_star, series.min_term, err, ratio)


def remainder_leading_order(x: float, N: int, t_list, *, max_skip: int = 4) -> list[OrderRow]:
    """Like :func:`asymptotic_order_check` but against the first nonzero coefficient.

    When ``He_{N+1}(x) = 0`` (``x = 0`` with ``N`` even) the remainder starts
    at order ``t**(N+2)``; the ratio is then taken with that power and
    compared with ``He_{N+2}(x)``.  Otherwise identical to the plain check.
    """
    k = N + 1
    while he_eval(k, float(x)) == 0 and k < N + 1 + max_skip:
        k += 1
    # S_{k-1} == S_N because the skipped coefficients vanish
    return asymptotic_order_check(x, k - 1, t_list)
