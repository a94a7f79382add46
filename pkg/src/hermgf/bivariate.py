"""Two-variable generating function with a mixing matrix.

``M = [[a, b], [c, d]]`` acts on the row vector ``(t, s)`` from the right::

    t' = a t + c s,    s' = b t + d s

and the bivariate Hermite family is defined through::

    sum_{n,m} t**n s**m He_{n,m}(M; x, y) = g(x, t') g(y, s')

Expanding ``t'**k s'**l`` with the binomial theorem gives the coefficients
explicitly (see :func:`he2_coeff`); :func:`series_product_oracle` recomputes
them by brute-force truncated series multiplication.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import CapacityError, DomainError
from .genfun import GenFunPoint, g_closed
from .hermite import he_sequence

ORACLE_MAX_ORDER = 16
SINGULAR_ATOL = 1e-14


@dataclass(frozen=True)
class MixMatrix:
    a: float
    b: float
    c: float
    d: float

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_rows(cls, rows):
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> float:
        return self.a * self.d - self.b * self.c

    @property
    def is_singular(self) -> bool:
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d), 1.0)
        return abs(self.det) <= SINGULAR_ATOL * scale * scale

    def apply(self, t, s):
        return self.a * t + self.c * s, self.b * t + self.d * s

    def scaled(self, lam: float) -> MixMatrix:
        return MixMatrix(lam * self.a, lam * self.b, lam * self.c, lam * self.d)

    def swapped(self) -> MixMatrix:
        """Matrix describing the same family after exchanging ``(t, x)`` with ``(s, y)``."""
        return MixMatrix(self.d, self.c, self.b, self.a)

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)


def mix_transform(M: MixMatrix, t: float, s: float) -> tuple[float, float]:
    """``(t', s') = (t, s) M``."""
    return M.apply(t, s)


def g2_closed(x: float, y: float, t: float, s: float, M: MixMatrix | None = None) -> float:
    """Closed form ``g(x, t') g(y, s')``.

    Raises
    ------
    DomainError
        If ``t'`` or ``s'`` vanishes, or either factor is off its positive
        branch; the message names the factor.
    """
    M = MixMatrix.identity() if M is None else M
    tp, sp = M.apply(t, s)
    factors = []
    for name, var, val in (("t'", x, tp), ("s'", y, sp)):
        if val == 0:
            raise DomainError(f"{name} = 0 after the mixing transform; factor g(., {name}) is undefined")
        try:
            factors.append(g_closed(GenFunPoint(var, val)))
        except DomainError as exc:
            raise DomainError(f"factor g(., {name}): {exc}") from exc
    return factors[0] * factors[1]


def _mix_coefficient(M, k, l, n):
    # coefficient of t**n s**(k+l-n) in (a t + c s)**k (b t + d s)**l
    a, b, c, d = M.a, M.b, M.c, M.d
    total = 0.0
    for j in range(max(0, n - l), min(k, n) + 1):
        total += (math.comb(k, j) * a**j * c ** (k - j)
                  * math.comb(l, n - j) * b ** (n - j) * d ** (l - n + j))
    return total


def he2_coeff(M: MixMatrix, n: int, m: int, x: float, y: float) -> float:
    """Bivariate Hermite coefficient ``He_{n,m}(M; x, y)``.

    ``sum_{k+l=n+m} He_k(x) He_l(y) C(k, l, n)`` with
    ``C(k, l, n) = sum_j binom(k, j) a**j c**(k-j) binom(l, n-j) b**(n-j) d**(l-n+j)``,
    ``j`` from ``max(0, n-l)`` to ``min(k, n)``.  Only ``k + l = n + m``
    contributes because ``t'`` and ``s'`` are homogeneous of degree one.
    """
    if n < 0 or m < 0:
        raise DomainError("n and m must be nonnegative")
    order = n + m
    hx = he_sequence(order, float(x))
    hy = he_sequence(order, float(y))
    return math.fsum(hx[k] * hy[order - k] * _mix_coefficient(M, k, order - k, n)
                     for k in range(order + 1))


def he2_grid(M: MixMatrix, N: int, x: float, y: float) -> np.ndarray:
    """``he2_coeff`` for all ``n + m <= N``; zero above the antidiagonal."""
    out = np.zeros((N + 1, N + 1))
    for n in range(N + 1):
        for m in range(N + 1 - n):
            out[n, m] = he2_coeff(M, n, m, x, y)
    return out


@dataclass
class TruncatedSeries2D:
    """Bivariate power series truncated at total degree ``order``.

    ``coeffs[n, m]`` multiplies ``t**n s**m``; entries with ``n + m > order``
    are kept at zero.
    """

    coeffs: np.ndarray
    order: int

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.shape != (self.order + 1, self.order + 1):
            raise ValueError("coefficient grid must be (order+1) x (order+1)")
        self.coeffs = self.coeffs * _mask(self.order)

    @property
    def max_n(self) -> int:
        return self.order

    @property
    def max_m(self) -> int:
        return self.order

    @classmethod
    def zero(cls, order):
        return cls(np.zeros((order + 1, order + 1)), order)

    @classmethod
    def constant(cls, value, order):
        out = cls.zero(order)
        out.coeffs[0, 0] = value
        return out

    @classmethod
    def linear(cls, ct, cs, order):
        """The series ``ct * t + cs * s``."""
        out = cls.zero(order)
        if order >= 1:
            out.coeffs[1, 0] = ct
            out.coeffs[0, 1] = cs
        return out

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries2D(self.coeffs + other.coeffs, self.order)

    def __mul__(self, other):
        if np.isscalar(other):
            return TruncatedSeries2D(self.coeffs * other, self.order)
        self._check(other)
        out = np.zeros_like(self.coeffs)
        N = self.order
        for n1, m1 in zip(*np.nonzero(self.coeffs)):
            v = self.coeffs[n1, m1]
            rem = N - n1 - m1
            # other[n2, m2] with n2 + m2 <= rem lands inside the truncation
            out[n1:n1 + rem + 1, m1:m1 + rem + 1] += v * other.coeffs[:rem + 1, :rem + 1] * _mask(rem)
        return TruncatedSeries2D(out, N)

    __rmul__ = __mul__

    def _check(self, other):
        if not isinstance(other, TruncatedSeries2D) or other.order != self.order:
            raise ValueError("series must share the same truncation order")


def _mask(order):
    idx = np.arange(order + 1)
    return (idx[:, None] + idx[None, :] <= order).astype(float)


def series_product_oracle(M: MixMatrix, x: float, y: float, N: int) -> TruncatedSeries2D:
    """Brute-force coefficient grid of ``g(x, t') g(y, s')`` to total degree ``N``.

    Builds ``sum_k He_k(x) t'**k`` and ``sum_l He_l(y) s'**l`` by repeated
    truncated multiplication of the linear forms, then multiplies them.

    Raises
    ------
    CapacityError
        If ``N > ORACLE_MAX_ORDER``.
    """
    if N > ORACLE_MAX_ORDER:
        raise CapacityError(f"oracle supports N <= {ORACLE_MAX_ORDER}, got {N}")
    if N < 0:
        raise DomainError("N must be >= 0")
    tp = TruncatedSeries2D.linear(M.a, M.c, N)
    sp = TruncatedSeries2D.linear(M.b, M.d, N)

    def compose(lin, hs):
        acc = TruncatedSeries2D.constant(hs[0], N)
        power = TruncatedSeries2D.constant(1.0, N)
        for k in range(1, N + 1):
            power = power * lin
            acc = acc + power * hs[k]
        return acc

    return compose(tp, he_sequence(N, float(x))) * compose(sp, he_sequence(N, float(y)))


def he2_magnitude(M: MixMatrix, n: int, m: int, x: float, y: float) -> float:
    """The sum in :func:`he2_coeff` with every factor replaced by its absolute value.

    Rounding error in ``he2_coeff`` is bounded by a small multiple of
    ``eps * he2_magnitude``; use it as the scale for relative comparisons.
    """
    order = n + m
    hx = [abs(v) for v in he_sequence(order, float(x))]
    hy = [abs(v) for v in he_sequence(order, float(y))]
    absM = MixMatrix(abs(M.a), abs(M.b), abs(M.c), abs(M.d))
    return math.fsum(hx[k] * hy[order - k] * _mix_coefficient(absM, k, order - k, n)
                     for k in range(order + 1))
