"""Asymptotic confidence intervals for a MAD and for two independent MADs.

Two-sample intervals scale each variance by its own sample size,
``ASV1/n1 + ASV2/n2``; with equal sample sizes this is the same as pooling
over ``n1 + n2``. The squared ratio is handled on the log scale and
exponentiated back, so its lower limit is always positive.
"""

from dataclasses import asdict, dataclass, field
import math

from scipy import special

from .asymptotics import estimate_mad_asv
from .core import as_sample, sample_mad
from .errors import InvalidInput, MadciError, SampleError, ZeroDenominatorMad

__all__ = [
    "ConfidenceInterval",
    "normal_quantile",
    "z_value",
    "mad_interval",
    "diff_interval",
    "ratio_sq_interval",
    "ratio_sq_variance",
    "ci_mad",
    "ci_diff_mads",
    "ci_ratio_sq_mads",
]


@dataclass(frozen=True)
class ConfidenceInterval:
    estimate: float
    lower: float
    upper: float
    level: float
    details: tuple = field(default=(), compare=False, repr=False)

    @property
    def width(self):
        return self.upper - self.lower

    def contains(self, value):
        return self.lower <= value <= self.upper

    def as_dict(self):
        d = asdict(self)
        d.pop("details")
        return d


def normal_quantile(p):
    """Standard normal quantile (Cephes ``ndtri``)."""
    if not 0 < p < 1:
        raise InvalidInput(f"p must lie in (0, 1), got {p}")
    return float(special.ndtri(p))


def z_value(level):
    if not 0 < level < 1:
        raise InvalidInput(f"level must lie in (0, 1), got {level}")
    return normal_quantile(1.0 - (1.0 - level) / 2.0)


def mad_interval(mad, asv, n, level=0.95):
    half = z_value(level) * math.sqrt(asv / n)
    return ConfidenceInterval(mad, mad - half, mad + half, level)


def diff_interval(mad1, asv1, n1, mad2, asv2, n2, level=0.95):
    est = mad1 - mad2
    half = z_value(level) * math.sqrt(asv1 / n1 + asv2 / n2)
    return ConfidenceInterval(est, est - half, est + half, level)


def ratio_sq_variance(mad1, asv1, n1, mad2, asv2, n2):
    """Delta-method variance of the squared MAD ratio estimate."""
    r = (mad1 / mad2) ** 2
    return 4.0 * r * (asv1 / (n1 * mad2**2) + r * asv2 / (n2 * mad2**2))


def _exp(v):
    return math.exp(v) if v < 709.0 else math.inf


def ratio_sq_interval(mad1, asv1, n1, mad2, asv2, n2, level=0.95):
    if mad2 == 0:
        raise ZeroDenominatorMad("MAD of the second sample is zero")
    r = (mad1 / mad2) ** 2
    var = ratio_sq_variance(mad1, asv1, n1, mad2, asv2, n2)
    half = z_value(level) * math.sqrt(var / r**2)
    log_r = math.log(r)
    return ConfidenceInterval(r, _exp(log_r - half), _exp(log_r + half), level)


def ci_mad(values, level=0.95):
    """Interval for the MAD of one sample, with a GLD-estimated ASV."""
    z_value(level)
    est = estimate_mad_asv(values)
    ci = mad_interval(est.mad, est.asv, est.n, level)
    return ConfidenceInterval(ci.estimate, ci.lower, ci.upper, level, (est,))


def _estimate_pair(values1, values2):
    out = []
    for which, values in ((1, values1), (2, values2)):
        try:
            out.append(estimate_mad_asv(values))
        except MadciError as exc:
            raise SampleError(which, exc) from exc
    return out


def ci_diff_mads(values1, values2, level=0.95):
    """Interval for MAD(sample 1) - MAD(sample 2)."""
    z_value(level)
    e1, e2 = _estimate_pair(values1, values2)
    ci = diff_interval(e1.mad, e1.asv, e1.n, e2.mad, e2.asv, e2.n, level)
    return ConfidenceInterval(ci.estimate, ci.lower, ci.upper, level, (e1, e2))


def ci_ratio_sq_mads(values1, values2, level=0.95):
    """Interval for (MAD(sample 1) / MAD(sample 2))**2 via the log scale."""
    z_value(level)
    try:
        mad2 = sample_mad(as_sample(values2))
    except MadciError as exc:
        raise SampleError(2, exc) from exc
    if mad2 == 0:
        raise ZeroDenominatorMad("MAD of the second sample is zero")
    e1, e2 = _estimate_pair(values1, values2)
    ci = ratio_sq_interval(e1.mad, e1.asv, e1.n, e2.mad, e2.asv, e2.n, level)
    return ConfidenceInterval(ci.estimate, ci.lower, ci.upper, level, (e1, e2))
