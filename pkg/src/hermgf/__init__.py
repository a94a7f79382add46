"""Factorial-free Hermite generating function ``g(x, t) = sum_n t**n He_n(x)``.

Closed-form evaluation through ``erfcx``, the identities it satisfies, and
tools for checking them numerically.
"""

from .bivariate import MixMatrix, TruncatedSeries2D, g2_closed, he2_coeff, series_product_oracle
from .cdf_link import cdf_asymptotic, squared_identity_residual
from .contour import Branch, ContourSpec, circle_quadrature, classic_contour_he, new_contour_he
from .exceptions import (
    CapacityError, DomainError, ErfcxOverflowError, QuadratureOverflowError, UsageError,
)
from .genfun import GenFunPoint, g_closed, g_closed_gamma, g_gradient, partial_sum, pde_residual
from .hermite import he_coefficients, he_eval, he_sequence
from .report import IdentityReport, emit_report, parse_report
from .special_fn import NormalParams, erfc, erfcx, erfcx_complex, gamma_half_upper, normal_cdf

__version__ = "0.1.0"

__all__ = [
    "Branch", "CapacityError", "ContourSpec", "DomainError", "ErfcxOverflowError",
    "GenFunPoint", "IdentityReport", "MixMatrix", "NormalParams", "QuadratureOverflowError",
    "TruncatedSeries2D", "UsageError", "cdf_asymptotic", "circle_quadrature",
    "classic_contour_he", "emit_report", "erfc", "erfcx", "erfcx_complex", "g2_closed",
    "g_closed", "g_closed_gamma", "g_gradient", "gamma_half_upper", "he2_coeff",
    "he_coefficients", "he_eval", "he_sequence", "new_contour_he", "normal_cdf",
    "parse_report", "partial_sum", "pde_residual", "series_product_oracle",
    "squared_identity_residual",
]
