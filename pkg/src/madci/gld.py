"""FKML generalized lambda distribution.

The distribution is defined through its quantile function

    Q(p) = l1 + ((p**l3 - 1)/l3 - ((1 - p)**l4 - 1)/l4) / l2,

with the logarithmic limits taken when a shape parameter is zero. The CDF
has no closed form and is obtained by inverting Q numerically; the density
follows from the quantile density, f(Q(p)) = l2 / (p**(l3-1) + (1-p)**(l4-1)).

Parameters are fitted by quantile least squares: the squared distance
between Q and the type-7 empirical quantiles on p = 1/100, ..., 99/100 is
minimized over the shapes by multi-start Nelder-Mead, with location and
scale pinned at each step so that Q reproduces the sample median and IQR.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import _kernels
from .core import _quantile_sorted, as_sample
from .errors import DegenerateSample, FitFailure, InvalidInput, InvalidProbability

__all__ = [
    "GldParams",
    "GldFit",
    "gld_quantile",
    "gld_cdf",
    "gld_density",
    "gld_support",
    "fit_gld",
    "fit_gld_full",
    "FIT_GRID",
    "START_SHAPES",
]

ZERO_SHAPE = _kernels.ZERO_SHAPE
FIT_GRID = np.arange(1, 100) / 100.0
START_SHAPES = (-0.25, 0.1, 0.5, 1.0, 2.0)
FIT_FATOL = 1e-8
FIT_XATOL = 1e-6
FIT_MAXITER = 500
FIT_STEP = 0.1
MIN_FIT_SIZE = 20
CDF_TOL = 1e-13

_STARTS = np.array([(a, b) for a in START_SHAPES for b in START_SHAPES])
_LOGP = np.log(FIT_GRID)
_LOG1MP = np.log1p(-FIT_GRID)


@dataclass(frozen=True)
class GldParams:
    lambda1: float
    lambda2: float
    lambda3: float
    lambda4: float

    def __post_init__(self):
        vals = (self.lambda1, self.lambda2, self.lambda3, self.lambda4)
        if not all(math.isfinite(v) for v in vals):
            raise InvalidInput(f"GLD parameters must be finite: {vals}")
        if not self.lambda2 > 0:
            raise InvalidInput(f"lambda2 must be positive, got {self.lambda2}")

    def as_tuple(self):
        return (self.lambda1, self.lambda2, self.lambda3, self.lambda4)


@dataclass(frozen=True)
class GldFit:
    """Fitted parameters plus optimizer diagnostics."""

    params: GldParams
    objective: float
    start: tuple
    iterations: int


def _as_params(g):
    return g if isinstance(g, GldParams) else GldParams(*g)


def _shape_term(logp, lam):
    if abs(lam) < ZERO_SHAPE:
        return logp
    return np.expm1(lam * logp) / lam


def _raw_quantile(g, p):
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        t3 = _shape_term(np.log(p), g.lambda3)
        t4 = _shape_term(np.log1p(-p), g.lambda4)
        return g.lambda1 + (t3 - t4) / g.lambda2


def gld_support(g):
    """(lower, upper) support endpoints; infinite when the shape is <= 0."""
    g = _as_params(g)
    lo = g.lambda1 - 1.0 / (g.lambda2 * g.lambda3) if g.lambda3 >= ZERO_SHAPE else -math.inf
    hi = g.lambda1 + 1.0 / (g.lambda2 * g.lambda4) if g.lambda4 >= ZERO_SHAPE else math.inf
    return lo, hi


def gld_quantile(g, p):
    """Quantile function Q(p). Accepts scalar or array ``p``.

    ``p = 0`` (``p = 1``) is accepted only when lambda3 (lambda4) is positive,
    i.e. when the corresponding end of the support is finite.
    """
    g = _as_params(g)
    parr = np.asarray(p, dtype=float)
    bad = ~np.isfinite(parr) | (parr < 0) | (parr > 1)
    bad |= (parr == 0) & (g.lambda3 < ZERO_SHAPE)
    bad |= (parr == 1) & (g.lambda4 < ZERO_SHAPE)
    if np.any(bad):
        raise InvalidProbability(f"probability outside the valid region for {g}: {p!r}")
    out = _raw_quantile(g, parr)
    lo, hi = gld_support(g)
    out = np.where(parr == 0, lo, np.where(parr == 1, hi, out))
    return float(out) if out.ndim == 0 else out


def _invert(g, x):
    """Bisection for p with Q(p) = x, elementwise; clamps outside the support."""
    lo_sup, hi_sup = gld_support(g)
    a = np.zeros_like(x)
    b = np.ones_like(x)
    # Bisection halves [0, 1]; 44 steps reach CDF_TOL.
    for _ in range(int(math.ceil(math.log2(1.0 / CDF_TOL)))):
        mid = 0.5 * (a + b)
        below = _raw_quantile(g, mid) < x
        a = np.where(below, mid, a)
        b = np.where(below, b, mid)
    p = 0.5 * (a + b)
    p = np.where(x <= lo_sup, 0.0, p)
    p = np.where(x >= hi_sup, 1.0, p)
    return p


def _check_x(x):
    xarr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xarr)):
        raise InvalidInput(f"x must be finite: {x!r}")
    return xarr


def gld_cdf(g, x):
    """Distribution function F(x), by numerical inversion of Q."""
    g = _as_params(g)
    xarr = _check_x(x)
    p = _invert(g, xarr)
    return float(p) if p.ndim == 0 else p


def _density_at_p(g, p):
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        qd = np.power(p, g.lambda3 - 1.0) + np.power(1.0 - p, g.lambda4 - 1.0)
        return g.lambda2 / qd


def gld_density(g, x):
    """Density f(x); zero outside the support."""
    g = _as_params(g)
    xarr = _check_x(x)
    p = _invert(g, xarr)
    lo_sup, hi_sup = gld_support(g)
    dens = _density_at_p(g, p)
    dens = np.where((xarr < lo_sup) | (xarr > hi_sup) | ~np.isfinite(dens), 0.0, dens)
    return float(dens) if dens.ndim == 0 else dens


def gld_cdf_density(g, x):
    """F(x) and f(x) from a single inversion; used on hot paths."""
    g = _as_params(g)
    xarr = _check_x(x)
    p = _invert(g, xarr)
    lo_sup, hi_sup = gld_support(g)
    dens = _density_at_p(g, p)
    dens = np.where((xarr < lo_sup) | (xarr > hi_sup) | ~np.isfinite(dens), 0.0, dens)
    return p, dens


def fit_gld_full(values):
    """Quantile least-squares fit; returns a :class:`GldFit` with diagnostics.

    Raises DegenerateSample when the sample MAD (or IQR) is zero, and
    FitFailure when no Nelder-Mead start converges.
    """
    xs = np.sort(as_sample(values))
    if xs.size < MIN_FIT_SIZE:
        raise InvalidInput(f"GLD fit needs at least {MIN_FIT_SIZE} observations, got {xs.size}")
    q = _quantile_sorted(xs, FIT_GRID)
    med = q[_kernels.I50]
    iqr = q[_kernels.I75] - q[_kernels.I25]
    mid = xs.size // 2
    mad_dev = np.sort(np.abs(xs - med))
    mad = mad_dev[mid] if xs.size % 2 else 0.5 * (mad_dev[mid - 1] + mad_dev[mid])
    if not (mad > 0 and iqr > 0):
        raise DegenerateSample("sample has zero MAD or zero IQR")
    z = (q - med) / iqr

    l3, l4, obj, start, iters = _kernels.multistart_fit(
        _STARTS, FIT_STEP, _LOGP, _LOG1MP, z, FIT_FATOL, FIT_XATOL, FIT_MAXITER
    )
    if start < 0:
        raise FitFailure("Nelder-Mead did not converge from any start")

    s = _kernels_s(l3, l4)
    lam2_std = s[_kernels.I75] - s[_kernels.I25]
    lam1_std = -s[_kernels.I50] / lam2_std
    params = GldParams(float(med + iqr * lam1_std), float(lam2_std / iqr), float(l3), float(l4))
    return GldFit(params, float(obj), tuple(float(v) for v in _STARTS[start]), int(iters))


def _kernels_s(l3, l4):
    return _shape_term(_LOGP, l3) - _shape_term(_LOG1MP, l4)


def fit_gld(values):
    """Fit FKML GLD parameters to a sample by quantile least squares."""
    return fit_gld_full(values).params
