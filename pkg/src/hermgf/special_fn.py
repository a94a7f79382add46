"""Error-function and incomplete-gamma kernels.

Everything downstream evaluates ``exp(z) * Gamma(1/2, z)`` through the scaled
complementary error function ``erfcx(x) = exp(x**2) * erfc(x)``, so no code
path ever forms ``exp(z)`` for large ``z``.

erfcx on the closed right half-plane is computed in two regions:

* ``|w| < CF_RADIUS``: Weideman's rational approximation in the Moebius
  variable ``Z = (L - w) / (L + w)`` with ``WEIDEMAN_TERMS`` coefficients.
  The coefficients are computed once at import by FFT and frozen.
* ``|w| >= CF_RADIUS``: Laplace continued fraction, evaluated backwards at a
  fixed depth.

The left half-plane uses the reflection ``erfcx(w) = 2 exp(w**2) - erfcx(-w)``.

The incomplete gamma route ``gamma_half_upper_scaled`` is deliberately
independent of erfcx (power series plus Legendre continued fraction in ``z``)
so the two closed forms of the generating function can be checked against
each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, ErfcxOverflowError

SQRT_PI = math.sqrt(math.pi)
INV_SQRT_PI = 1.0 / SQRT_PI

# Region boundary for erfcx: rational approximation inside, continued
# fraction outside.  Both are accurate to a few ulp on the circle |w| = 8.
CF_RADIUS = 8.0
CF_DEPTH = 28
WEIDEMAN_TERMS = 40

# Largest exponent a such that 2*exp(a) is finite.
LOG_HALF_MAX = math.log(np.finfo(float).max) - math.log(2.0)

# Switch between series and continued fraction for exp(z)*Gamma(1/2, z).
_GAMMA_SERIES_LIMIT = 1.5
_GAMMA_EPS = 1e-17
_GAMMA_MAX_ITER = 500
_TINY = 1e-300


def _weideman_coefficients(n_terms):
    m = 2 * n_terms
    k = np.arange(-m + 1, m)
    scale = math.sqrt(n_terms / math.sqrt(2.0))
    theta = k * math.pi / m
    t = scale * np.tan(theta / 2)
    f = np.concatenate(([0.0], np.exp(-t**2) * (scale**2 + t**2)))
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / (2 * m)
    coeffs = a[1:n_terms + 1][::-1].copy()
    coeffs.setflags(write=False)
    return scale, coeffs


_W_SCALE, _W_COEFFS = _weideman_coefficients(WEIDEMAN_TERMS)


@dataclass(frozen=True)
class NormalParams:
    """Mean and standard deviation of a normal distribution."""

    mu: float
    sigma: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma)):
            raise DomainError(f"normal parameters must be finite, got {self}")
        if self.sigma <= 0:
            raise DomainError(f"sigma must be positive, got {self.sigma}")


def _as_finite_array(x, name, dtype=float):
    arr = np.asarray(x, dtype=dtype)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name}: argument must be finite")
    return arr


def _unwrap(arr, like):
    return arr.item() if np.ndim(like) == 0 else arr


def _erfcx_rational(w):
    denom = _W_SCALE + w
    z = (_W_SCALE - w) / denom
    p = np.polyval(_W_COEFFS, z)
    return 2.0 * p / denom**2 + INV_SQRT_PI / denom


def _erfcx_contfrac(w):
    r = np.zeros_like(w)
    for k in range(CF_DEPTH, 0, -1):
        r = (0.5 * k) / (w + r)
    return INV_SQRT_PI / (w + r)


def _erfcx_right(w):
    """erfcx on Re(w) >= 0; ``w`` is an ndarray (real or complex)."""
    out = np.empty_like(w)
    far = np.abs(w) >= CF_RADIUS
    if far.any():
        out[far] = _erfcx_contfrac(w[far])
    near = ~far
    if near.any():
        out[near] = _erfcx_rational(w[near])
    return out


def _exp_square(x):
    """exp(x**2) for real x with the square split exactly as hi + lo."""
    hi = x * x
    c = 134217729.0 * x  # 2**27 + 1, Veltkamp split
    xh = c - (c - x)
    xl = x - xh
    lo = ((xh * xh - hi) + 2.0 * xh * xl) + xl * xl
    with np.errstate(over="ignore"):
        return np.exp(hi) * (1.0 + lo)


def erfc(x: float) -> float:
    """Complementary error function of a finite real argument."""
    if not math.isfinite(x):
        raise DomainError("erfc: argument must be finite")
    return math.erfc(x)


def erfcx(x):
    """Scaled complementary error function ``exp(x**2) * erfc(x)``.

    Accepts a float or an array of floats.  Never overflows for ``x >= 0``;
    for ``x`` below about -26.6 the true value exceeds the float range and
    ``inf`` is returned.

    Raises
    ------
    DomainError
        If any input is not finite.
    """
    arr = _as_finite_array(x, "erfcx")
    flat = np.atleast_1d(arr).astype(float)
    out = np.empty_like(flat)
    pos = flat >= 0
    out[pos] = _erfcx_right(flat[pos])
    neg = ~pos
    if neg.any():
        xn = flat[neg]
        out[neg] = 2.0 * _exp_square(xn) - _erfcx_right(-xn)
    return _unwrap(out.reshape(arr.shape), x)


def _erfcx_complex_core(w):
    """Vectorised complex erfcx.

    Returns ``(values, overflow_mask, exponents)`` where ``exponents`` holds
    ``w**2`` (meaningful on the reflected half-plane only).
    """
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    out = np.empty_like(w)
    overflow = np.zeros(w.shape, dtype=bool)
    x, y = w.real, w.imag
    w2 = (x - y) * (x + y) + 2j * x * y

    right = x >= 0
    if right.any():
        out[right] = _erfcx_right(w[right])
    left = ~right
    if left.any():
        too_big = left & (w2.real > LOG_HALF_MAX)
        overflow |= too_big
        ok = left & ~too_big
        if ok.any():
            e = np.exp(w2.real[ok])
            phase = w2.imag[ok]
            ew2 = e * np.cos(phase) + 1j * e * np.sin(phase)
            out[ok] = 2.0 * ew2 - _erfcx_right(-w[ok])
        out[too_big] = complex(math.nan, math.nan)
    return out, overflow, w2


def erfcx_complex(w):
    """Analytic continuation of erfcx to complex arguments.

    Agrees with :func:`erfcx` on the real axis and satisfies
    ``erfcx(conj(w)) == conj(erfcx(w))``.

    Raises
    ------
    DomainError
        If ``w`` is not finite.
    ErfcxOverflowError
        If ``2*exp(w**2)`` in the left half-plane is not representable.  The
        exception carries the exponent ``w**2`` (and the flat index for array
        input).
    """
    arr = _as_finite_array(w, "erfcx_complex", dtype=complex)
    values, overflow, w2 = _erfcx_complex_core(arr.ravel())
    if overflow.any():
        idx = int(np.flatnonzero(overflow)[0])
        raise ErfcxOverflowError(complex(w2[idx]), None if np.ndim(w) == 0 else idx)
    return _unwrap(values.reshape(arr.shape), w)


def erfcx_complex_masked(w):
    """Like :func:`erfcx_complex` but never raises on overflow.

    Returns ``(values, overflow_mask, exponents)``; overflowing entries are
    NaN in ``values``.
    """
    arr = _as_finite_array(w, "erfcx_complex", dtype=complex)
    values, overflow, w2 = _erfcx_complex_core(arr.ravel())
    return values.reshape(arr.shape), overflow.reshape(arr.shape), w2.reshape(arr.shape)


def _gamma_half_series_scaled(z):
    # exp(z)*gamma(1/2, z) = sqrt(z) * sum_k z^k / (1/2 (3/2) ... (k + 1/2))
    term = 2.0
    total = term
    a = 0.5
    for _ in range(_GAMMA_MAX_ITER):
        a += 1.0
        term *= z / a
        total += term
        if abs(term) < abs(total) * _GAMMA_EPS:
            break
    return math.exp(z) * SQRT_PI - math.sqrt(z) * total


def _gamma_half_contfrac_scaled(z):
    # Legendre continued fraction, modified Lentz.
    b = z + 0.5
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _GAMMA_MAX_ITER):
        an = -i * (i - 0.5)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_EPS:
            break
    return math.sqrt(z) * h


def gamma_half_upper_scaled(z: float) -> float:
    """``exp(z) * Gamma(1/2, z)`` for ``z >= 0``, free of overflow.

    Computed from the incomplete gamma series / continued fraction in ``z``,
    not from erfcx, so it can serve as an independent route.
    """
    if not math.isfinite(z):
        raise DomainError("gamma_half_upper_scaled: argument must be finite")
    if z < 0:
        raise DomainError(f"gamma_half_upper_scaled: z must be >= 0, got {z}")
    if z < _GAMMA_SERIES_LIMIT:
        return _gamma_half_series_scaled(z)
    return _gamma_half_contfrac_scaled(z)


def gamma_half_upper(z: float) -> float:
    """Upper incomplete gamma ``Gamma(1/2, z)`` for real ``z >= 0``."""
    scaled = gamma_half_upper_scaled(z)
    return math.exp(-z) * scaled


def normal_cdf(x: float, params: NormalParams) -> float:
    """Normal CDF ``Phi(x; mu, sigma) = erfc((mu - x) / (sqrt(2) sigma)) / 2``."""
    if not isinstance(params, NormalParams):
        raise DomainError("normal_cdf: params must be NormalParams")
    if not math.isfinite(x):
        raise DomainError("normal_cdf: x must be finite")
    return 0.5 * math.erfc((params.mu - x) / (math.sqrt(2.0) * params.sigma))
