"""Order-statistic primitives: median, MAD and empirical quantiles.

The MAD here is the raw median of absolute deviations from the sample
median. It is *not* multiplied by the 1.4826 normal-consistency constant
that ``scipy.stats.median_abs_deviation(scale="normal")`` and R's ``mad``
apply by default.
"""

import numpy as np

from .errors import EmptyInput, InvalidInput, InvalidProbability

__all__ = [
    "clean_sample",
    "as_sample",
    "sample_median",
    "sample_mad",
    "empirical_quantile",
]


def clean_sample(values):
    """Ingestion filter: drop missing and non-finite entries.

    Returns a float array. ``None`` entries are treated as missing.
    """
    arr = np.asarray(
        [np.nan if v is None else v for v in np.ravel(np.asarray(values, dtype=object))],
        dtype=float,
    )
    return arr[np.isfinite(arr)]


def as_sample(values):
    """Validate ``values`` for an estimator: nonempty, all finite."""
    arr = np.asarray(values, dtype=float).ravel()
    if arr.size == 0:
        raise EmptyInput("sample is empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput("sample contains NaN or infinite values; use clean_sample first")
    return arr


def _median_sorted(xs):
    n = xs.size
    mid = n // 2
    if n % 2:
        return float(xs[mid])
    return float(0.5 * (xs[mid - 1] + xs[mid]))


def sample_median(values):
    """Sample median; the midpoint of the two central values for even n."""
    xs = np.sort(as_sample(values))
    return _median_sorted(xs)


def sample_mad(values):
    """Median of ``|x_i - m|`` where ``m`` is the sample median."""
    xs = np.sort(as_sample(values))
    m = _median_sorted(xs)
    return _median_sorted(np.sort(np.abs(xs - m)))


def empirical_quantile(values, p):
    """Linear interpolation between order statistics at rank ``(n-1)p + 1``.

    This is the Hyndman-Fan type 7 rule (numpy's default), so ``p = 0.5``
    coincides with :func:`sample_median`. ``p`` may be a scalar or an array.
    """
    xs = np.sort(as_sample(values))
    return _quantile_sorted(xs, p)


def _quantile_sorted(xs, p):
    parr = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(parr)) or np.any((parr < 0) | (parr > 1)):
        raise InvalidProbability(f"probability outside [0, 1]: {p!r}")
    n = xs.size
    h = (n - 1) * parr
    lo = np.floor(h).astype(int)
    hi = np.minimum(lo + 1, n - 1)
    frac = h - lo
    out = xs[lo] + frac * (xs[hi] - xs[lo])
    return float(out) if out.ndim == 0 else out
