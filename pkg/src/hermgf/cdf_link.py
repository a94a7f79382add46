"""Normal-CDF consequences of the generating function.

With ``t = 1/mu`` the closed form becomes a Mills ratio::

    sum_n He_n(x) / mu**(n+1) = sqrt(2 pi) exp((mu - x)**2 / 2) Phi(x; mu, 1)
                              = sqrt(pi/2) erfcx((mu - x) / sqrt(2))

for ``mu > 0``.  The Gaussian factor ``exp((mu - x)**2 / 2)`` is essential:
without it the left side is of order ``1/mu`` while ``Phi`` is
exponentially small.  :func:`cdf_asymptotic` therefore multiplies the
truncated sum by the normal density ``phi(x; mu, 1)`` to estimate ``Phi``.

For ``mu < 0`` the same sum is ``-sqrt(2 pi) exp((x - mu)**2 / 2) (1 - Phi)``;
the reference is adjusted accordingly.

The expectation form ``sum E[He_n] / mu**(n+1) = sum 1/mu`` diverges and has
no finite content, so nothing here computes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DomainError
from .hermite import he_sequence
from .special_fn import NormalParams, erfcx, normal_cdf

SQRT_2PI = math.sqrt(2.0 * math.pi)
SQRT_HALF_PI = math.sqrt(0.5 * math.pi)


@dataclass(frozen=True)
class CdfSeriesResult:
    """Truncated series estimate of ``Phi(x; mu, 1)`` against the erfc value.

    ``series_sum`` is ``sum_{n<=N} He_n(x) / mu**(n+1)`` (the Mills-ratio
    estimate) and ``value`` is ``series_sum * phi(x; mu, 1)``.
    """

    mu: float
    x: float
    n_terms: int
    value: float
    reference: float
    rel_error: float
    series_sum: float
    terms: tuple


def _check(mu, N):
    if mu == 0 or not math.isfinite(mu):
        raise DomainError(f"mu must be finite and nonzero, got {mu}")
    if N < 0:
        raise DomainError("N must be >= 0")


def series_terms(x: float, mu: float, N: int) -> list[float]:
    """``[He_n(x) / mu**(n+1) for n <= N]``."""
    _check(mu, N)
    he = he_sequence(N, float(x))
    inv = 1.0 / mu
    out = []
    power = inv
    for h in he:
        out.append(h * power)
        power *= inv
    return out


def mills_reference(x: float, mu: float) -> float:
    """Closed value of ``sum_n He_n(x) / mu**(n+1)``, overflow-free."""
    _check(mu, 0)
    if mu > 0:
        return SQRT_HALF_PI * erfcx((mu - x) / math.sqrt(2.0))
    return -SQRT_HALF_PI * erfcx((x - mu) / math.sqrt(2.0))


def cdf_asymptotic(x: float, mu: float, N: int) -> CdfSeriesResult:
    """Estimate ``Phi(x; mu, 1)`` from the first ``N + 1`` Hermite terms.

    Meaningful when ``|mu|`` is large compared with ``|x|``; the series is
    asymptotic, so accuracy improves with ``N`` only up to about ``N ~ mu**2``.
    """
    terms = series_terms(x, mu, N)
    s = math.fsum(terms)
    density = math.exp(-0.5 * (x - mu) ** 2) / SQRT_2PI
    value = s * density
    if mu > 0:
        reference = normal_cdf(x, NormalParams(mu, 1.0))
    else:
        # Phi - 1 without cancellation
        reference = -0.5 * math.erfc((x - mu) / math.sqrt(2.0))
    rel = abs(value - reference) / abs(reference) if reference != 0 else math.inf
    return CdfSeriesResult(mu, x, N, value, reference, rel, s, tuple(terms))


def cauchy_square(coeffs, N: int) -> list[float]:
    """Coefficients ``c_k = sum_{n+m=k} a_n a_m`` for ``k <= N``."""
    a = list(coeffs)
    return [math.fsum(a[n] * a[k - n] for n in range(k + 1) if n < len(a) and k - n < len(a))
            for k in range(N + 1)]


def squared_double_sum(x: float, mu: float, N: int) -> float:
    """``sum_{n+m<=N} He_n(x) He_m(x) / mu**(n+m+2)``."""
    return math.fsum(cauchy_square(series_terms(x, mu, N), N))


def squared_identity_residual(x: float, mu: float, N: int) -> float:
    """Relative residual of the squared identity.

    Compares the total-degree-``N`` double sum with the square of the Mills
    ratio, ``2 pi exp((mu - x)**2) Phi**2``.
    """
    target = mills_reference(x, mu) ** 2
    return abs(squared_double_sum(x, mu, N) - target) / target


def divergence_turnaround(x: float, mu: float, N: int) -> int | None:
    """Index where ``|He_n(x) / mu**(n+1)|`` stops shrinking, if within ``N``.

    Uses the two-term envelope ``max(|a_n|, |a_{n+1}|)`` so parity zeros
    (``He_odd(0) = 0``) do not register.  Returns the envelope minimiser when
    the envelope has grown again by ``n = N - 1``; ``None`` if the terms are
    still decreasing.
    """
    mags = [abs(v) for v in series_terms(x, mu, N)]
    if len(mags) < 3:
        return None
    env = [max(mags[i], mags[i + 1]) for i in range(len(mags) - 1)]
    k = env.index(min(env))
    return k if env[-1] > env[k] else None
