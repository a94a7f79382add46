"""Probabilist Hermite polynomials He_n.

Floating evaluation runs the three-term recurrence
``He_{n+1} = x He_n - n He_{n-1}`` upward from ``He_0 = 1, He_1 = x``.  No
rescaling is applied; for ``n <= 50`` and ``|x| <= 10`` every intermediate
stays far below the float range (``|He_50(10)|`` is about 1e50).

The recurrence only uses ``*``, ``-`` and integer multiples, so ``x`` may be
a float, an ndarray, a ``Fraction`` or a gmpy2 ``mpfr``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import CapacityError, DomainError

# Python integers never wrap; the bound only keeps memory and time sane.
MAX_EXACT_DEGREE = 2000


def _check_degree(n):
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


def he_sequence(nmax: int, x) -> list:
    """Return ``[He_0(x), ..., He_nmax(x)]`` from one recurrence pass."""
    nmax = _check_degree(nmax)
    one = x * 0 + 1
    seq = [one]
    if nmax == 0:
        return seq
    seq.append(x * one)
    for k in range(1, nmax):
        seq.append(x * seq[k] - k * seq[k - 1])
    return seq


def he_eval(n: int, x):
    """Evaluate ``He_n(x)`` by the three-term recurrence."""
    n = _check_degree(n)
    prev, cur = x * 0 + 1, x
    if n == 0:
        return prev
    for k in range(1, n):
        prev, cur = cur, x * cur - k * prev
    return cur


def he_derivative(n: int, x):
    """``d/dx He_n(x)`` computed as ``x He_n(x) - He_{n+1}(x)``."""
    n = _check_degree(n)
    seq = he_sequence(n + 1, x)
    return x * seq[n] - seq[n + 1]


@dataclass(frozen=True)
class HermiteCoeffs:
    """Exact monomial coefficients of He_n; ``coeffs[k]`` multiplies ``x**k``."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError("coefficient vector must have length n + 1")
        if self.coeffs[-1] != 1:
            raise ValueError("He_n is monic")
        if any(c != 0 for c in self.coeffs[(self.n + 1) % 2::2]):
            raise ValueError("coefficients of the wrong parity must vanish")

    def __call__(self, x):
        """Horner evaluation; exact for int or Fraction input."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc


def he_coefficients(n: int) -> HermiteCoeffs:
    """Exact integer coefficients of He_n via the coefficient recurrence.

    Raises
    ------
    CapacityError
        If ``n > MAX_EXACT_DEGREE``.
    """
    n = _check_degree(n)
    if n > MAX_EXACT_DEGREE:
        raise CapacityError(f"he_coefficients supports n <= {MAX_EXACT_DEGREE}, got {n}")
    prev, cur = [1], [0, 1]
    if n == 0:
        return HermiteCoeffs(0, (1,))
    for k in range(1, n):
        nxt = [0] + cur  # x * He_k
        for i, c in enumerate(prev):
            nxt[i] -= k * c
        prev, cur = cur, nxt
    return HermiteCoeffs(n, tuple(cur))


def he_eval_exact(n: int, x) -> Fraction:
    """He_n at a rational point, exactly."""
    return he_coefficients(n)(Fraction(x))
