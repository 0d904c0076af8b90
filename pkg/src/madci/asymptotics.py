"""Asymptotic variances and influence functions for MADs.

For a distribution with density f, CDF F, median M and MAD a, write
f_lo = f(M - a), f_hi = f(M + a) and

    B1 = f_lo + f_hi
    B3 = f_lo - f_hi
    B2 = B3**2 + 4*B3*f(M)*(1 - F(M + a) - F(M - a))

Then sqrt(n)*(MAD_n - a) is asymptotically normal with variance
(1 + B2/f(M)**2) / (4*B1**2).

The influence function of the MAD is

    IF(x) = [sign(|x - M| - a) - (f_hi - f_lo)/f(M) * sign(x - M)] / (2*B1),

which is piecewise constant with jumps at M and M +/- a, and satisfies
E[IF(X)**2] = ASV.
"""

from dataclasses import dataclass
import math

import numpy as np

from .core import as_sample, sample_mad, sample_median
from .distributions import find_root, mad_of_cdf, true_mad
from .errors import AsvUndefined, DegenerateSample, InvalidInput
from .gld import fit_gld_full, gld_cdf_density

__all__ = [
    "MadAsvTerms",
    "MadEstimate",
    "asv_terms",
    "exact_asv_terms",
    "asv_mad",
    "asv_mad_exact",
    "asv_mad_estimated",
    "estimate_mad_asv",
    "asv_ratio_sq",
    "asv_diff",
    "if_mad",
    "pif_ratio_sq",
    "pif_diff",
    "pif_curve",
    "contaminated_mad",
]


@dataclass(frozen=True)
class MadAsvTerms:
    M: float
    mad: float
    f_at_M: float
    f_lo: float
    f_hi: float
    F_lo: float
    F_hi: float
    B1: float
    B2: float
    B3: float


def asv_terms(f, F, M, mad):
    """Evaluate the ingredients of the MAD asymptotic variance.

    ``f`` and ``F`` are the density and distribution function (callables).
    """
    f_at_M = float(f(M))
    f_lo, f_hi = float(f(M - mad)), float(f(M + mad))
    F_lo, F_hi = float(F(M - mad)), float(F(M + mad))
    return _terms_from_values(M, mad, f_at_M, f_lo, f_hi, F_lo, F_hi)


def _terms_from_values(M, mad, f_at_M, f_lo, f_hi, F_lo, F_hi):
    if not f_at_M > 0:
        raise AsvUndefined(f"density at the median is {f_at_M}")
    B1 = f_lo + f_hi
    if not B1 > 0:
        raise AsvUndefined(f"f(M - MAD) + f(M + MAD) = {B1}")
    B3 = f_lo - f_hi
    B2 = B3 * B3 + 4.0 * B3 * f_at_M * (1.0 - F_hi - F_lo)
    return MadAsvTerms(M, mad, f_at_M, f_lo, f_hi, F_lo, F_hi, B1, B2, B3)


def exact_asv_terms(d):
    """Terms at a reference distribution (exact median and MAD)."""
    M = d.median()
    return asv_terms(d.pdf, d.cdf, M, true_mad(d))


def asv_mad(terms):
    return (1.0 + terms.B2 / terms.f_at_M**2) / (4.0 * terms.B1**2)


def asv_mad_exact(d):
    return asv_mad(exact_asv_terms(d))


@dataclass(frozen=True)
class MadEstimate:
    """Sample MAD with its GLD-estimated asymptotic variance."""

    mad: float
    asv: float
    n: int
    terms: MadAsvTerms
    fit: object


def estimate_mad_asv(values):
    """Fit a GLD to the sample and plug it into the ASV formula.

    The median and MAD are the sample values; only f and F come from the fit.
    """
    xs = as_sample(values)
    m = sample_median(xs)
    mad = sample_mad(xs)
    if not mad > 0:
        raise DegenerateSample("sample MAD is zero")
    fit = fit_gld_full(xs)
    F, f = gld_cdf_density(fit.params, np.array([m - mad, m + mad, m]))
    terms = _terms_from_values(m, mad, float(f[2]), float(f[0]), float(f[1]), float(F[0]), float(F[1]))
    return MadEstimate(mad, asv_mad(terms), int(xs.size), terms, fit)


def asv_mad_estimated(values):
    return estimate_mad_asv(values).asv


def asv_ratio_sq(asv1, mad1, w1, asv2, mad2, w2):
    """ASV of sqrt(n1 + n2) times the squared MAD ratio, with ``w_i = n_i/(n1 + n2)``."""
    r = (mad1 / mad2) ** 2
    return 4.0 * r * r * (asv1 / (w1 * mad1**2) + asv2 / (w2 * mad2**2))


def asv_diff(asv1, asv2):
    return asv1 + asv2


def _if_from_terms(x, t):
    x = np.asarray(x, dtype=float)
    skew = (t.f_hi - t.f_lo) / t.f_at_M
    return (np.sign(np.abs(x - t.M) - t.mad) - skew * np.sign(x - t.M)) / (2.0 * t.B1)


def if_mad(x, d):
    """Influence function of the MAD functional at distribution ``d``."""
    out = _if_from_terms(x, exact_asv_terms(d))
    return float(out) if out.ndim == 0 else out


def _check_which(which):
    if which not in (1, 2):
        raise InvalidInput(f"which must be 1 or 2, got {which!r}")


def pif_ratio_sq(x, d1, d2, which=1):
    """Partial influence function of the squared MAD ratio.

    Contaminating population 1 gives ``2*R/MAD1 * IF1``; population 2 gives
    ``-2*R/MAD2 * IF2``.
    """
    _check_which(which)
    mad1, mad2 = true_mad(d1), true_mad(d2)
    r = (mad1 / mad2) ** 2
    if which == 1:
        return 2.0 * r / mad1 * if_mad(x, d1)
    return -2.0 * r / mad2 * if_mad(x, d2)


def pif_diff(x, d1, d2, which=1):
    _check_which(which)
    if which == 1:
        return if_mad(x, d1)
    return -if_mad(x, d2)


def pif_curve(d1, d2, measure="ratio_sq", start=0.0, stop=10.0, step=0.01):
    """Tabulate PIF_1 on ``start, start + step, ..., stop``.

    Returns an array of shape (k, 2) holding (x, PIF_1(x)); empty when
    ``stop < start``.
    """
    if not (step > 0 and math.isfinite(step) and math.isfinite(start) and math.isfinite(stop)):
        raise InvalidInput("grid needs finite start/stop and a positive step")
    if stop < start:
        return np.empty((0, 2))
    k = int(math.floor((stop - start) / step + 1e-9)) + 1
    xs = start + step * np.arange(k)
    if measure in ("ratio_sq", "ratio-sq"):
        ys = pif_ratio_sq(xs, d1, d2, which=1)
    elif measure == "diff":
        ys = pif_diff(xs, d1, d2, which=1)
    else:
        raise InvalidInput(f"unknown measure {measure!r}")
    return np.column_stack([xs, np.asarray(ys, dtype=float).reshape(-1)])


def contaminated_mad(d, x, eps):
    """Population median and MAD of ``(1 - eps)*d + eps*delta_x``.

    Works from the exact mixture CDF by root finding; used to check
    influence functions by finite differences.
    """
    def cdf(y):
        return (1.0 - eps) * float(d.cdf(y)) + (eps if y >= x else 0.0)

    lo, hi = (float(v) for v in d.quantile(np.array([0.25, 0.75])))
    lo = min(lo, x) - 1.0
    hi = max(hi, x) + 1.0
    m = find_root(lambda y: cdf(y) - 0.5, lo, hi, "mixture median")
    mad = mad_of_cdf(cdf, m, max(hi - m, m - lo))
    return m, mad
