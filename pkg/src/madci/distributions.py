"""Exact reference distributions and population MADs.

These supply the truth for the coverage simulations and the densities for
influence-function curves. Sampling is by inverse CDF on a Philox
(counter-based) uniform stream, so a draw is a pure function of
``(distribution, n, seed)``.

Pareto uses the support-[scale, inf) convention,
``F(x) = 1 - (scale/x)**shape``.
"""

from dataclasses import dataclass
import math

import numpy as np
from scipy import optimize, special

from .errors import InvalidInput, InvalidProbability, RootFindFailure
from .gld import GldParams, gld_cdf, gld_density, gld_quantile, gld_support

__all__ = [
    "LogNormal",
    "Exponential",
    "ChiSquare",
    "Pareto",
    "Gld",
    "parse_dist",
    "dist_pdf",
    "dist_cdf",
    "dist_quantile",
    "dist_sample",
    "uniform_stream",
    "mad_of_cdf",
    "true_mad",
    "true_ratio_sq",
    "true_diff",
]

ROOT_XTOL = 1e-14
ROOT_RTOL = 4 * np.finfo(float).eps


def _check_positive(**kw):
    for name, v in kw.items():
        if not (math.isfinite(v) and v > 0):
            raise InvalidInput(f"{name} must be positive and finite, got {v}")


class _Dist:
    kind = ""

    def support(self):
        return (-math.inf, math.inf)

    def median(self):
        return float(self.quantile(0.5))

    def __str__(self):
        return f"{self.kind}:{','.join(f'{v:g}' for v in self._args())}"


@dataclass(frozen=True)
class LogNormal(_Dist):
    mu: float = 0.0
    sigma: float = 1.0
    kind = "lognormal"

    def __post_init__(self):
        _check_positive(sigma=self.sigma)
        if not math.isfinite(self.mu):
            raise InvalidInput("mu must be finite")

    def _args(self):
        return (self.mu, self.sigma)

    def support(self):
        return (0.0, math.inf)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            z = (np.log(x) - self.mu) / self.sigma
            out = np.exp(-0.5 * z * z) / (x * self.sigma * math.sqrt(2 * math.pi))
        return np.where(x > 0, out, 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = special.ndtr((np.log(x) - self.mu) / self.sigma)
        return np.where(x > 0, out, 0.0)

    def quantile(self, p):
        return np.exp(self.mu + self.sigma * special.ndtri(p))


@dataclass(frozen=True)
class Exponential(_Dist):
    rate: float = 1.0
    kind = "exp"

    def __post_init__(self):
        _check_positive(rate=self.rate)

    def _args(self):
        return (self.rate,)

    def support(self):
        return (0.0, math.inf)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x >= 0, self.rate * np.exp(-self.rate * np.maximum(x, 0.0)), 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -np.expm1(-self.rate * np.maximum(x, 0.0)), 0.0)

    def quantile(self, p):
        return -np.log1p(-np.asarray(p, dtype=float)) / self.rate


@dataclass(frozen=True)
class ChiSquare(_Dist):
    df: float = 1.0
    kind = "chisq"

    def __post_init__(self):
        _check_positive(df=self.df)

    def _args(self):
        return (self.df,)

    def support(self):
        return (0.0, math.inf)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        k = 0.5 * self.df
        with np.errstate(divide="ignore", invalid="ignore"):
            logf = (k - 1) * np.log(x) - 0.5 * x - k * math.log(2.0) - special.gammaln(k)
            out = np.exp(logf)
        return np.where(x > 0, out, 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, special.gammainc(0.5 * self.df, 0.5 * np.maximum(x, 0.0)), 0.0)

    def quantile(self, p):
        return 2.0 * special.gammaincinv(0.5 * self.df, np.asarray(p, dtype=float))


@dataclass(frozen=True)
class Pareto(_Dist):
    scale: float = 1.0
    shape: float = 1.0
    kind = "pareto"

    def __post_init__(self):
        _check_positive(scale=self.scale, shape=self.shape)

    def _args(self):
        return (self.scale, self.shape)

    def support(self):
        return (self.scale, math.inf)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = self.shape * self.scale**self.shape / x ** (self.shape + 1)
        return np.where(x >= self.scale, out, 0.0)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = -np.expm1(self.shape * np.log(self.scale / x))
        return np.where(x > self.scale, out, 0.0)

    def quantile(self, p):
        return self.scale * np.exp(-np.log1p(-np.asarray(p, dtype=float)) / self.shape)


@dataclass(frozen=True)
class Gld(_Dist):
    params: GldParams
    kind = "gld"

    def _args(self):
        return self.params.as_tuple()

    def support(self):
        return gld_support(self.params)

    def pdf(self, x):
        return np.asarray(gld_density(self.params, x))

    def cdf(self, x):
        return np.asarray(gld_cdf(self.params, x))

    def quantile(self, p):
        return np.asarray(gld_quantile(self.params, p))


_KINDS = {
    "lognormal": (LogNormal, 2),
    "ln": (LogNormal, 2),
    "exp": (Exponential, 1),
    "exponential": (Exponential, 1),
    "chisq": (ChiSquare, 1),
    "pareto": (Pareto, 2),
    "par": (Pareto, 2),
    "gld": (None, 4),
}


def parse_dist(text):
    """Parse ``kind:a,b,...``, e.g. ``lognormal:0,1``, ``exp:1``, ``gld:0,1,0,0``."""
    kind, _, rest = text.strip().partition(":")
    kind = kind.strip().lower()
    if kind not in _KINDS:
        raise InvalidInput(f"unknown distribution kind {kind!r} in {text!r}")
    cls, nargs = _KINDS[kind]
    try:
        args = [float(tok) for tok in rest.split(",")] if rest.strip() else []
    except ValueError as exc:
        raise InvalidInput(f"bad distribution parameters in {text!r}") from exc
    if len(args) != nargs:
        raise InvalidInput(f"{kind} takes {nargs} parameter(s), got {len(args)} in {text!r}")
    if cls is None:
        return Gld(GldParams(*args))
    return cls(*args)


def _scalar(out):
    out = np.asarray(out, dtype=float)
    return float(out) if out.ndim == 0 else out


def dist_pdf(d, x):
    xarr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xarr)):
        raise InvalidInput(f"x must be finite: {x!r}")
    return _scalar(d.pdf(xarr))


def dist_cdf(d, x):
    xarr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(xarr)):
        raise InvalidInput(f"x must be finite: {x!r}")
    return _scalar(d.cdf(xarr))


def dist_quantile(d, p):
    parr = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(parr)) or np.any((parr <= 0) | (parr >= 1)):
        raise InvalidProbability(f"p must lie in (0, 1): {p!r}")
    return _scalar(d.quantile(parr))


def uniform_stream(n, seed):
    """``n`` uniforms on the open interval (0, 1) from a Philox stream keyed by ``seed``."""
    gen = np.random.Generator(np.random.Philox(key=int(seed) & 0xFFFFFFFFFFFFFFFF))
    # random() returns multiples of 2**-53 in [0, 1); the half-step offset keeps 0 out.
    return gen.random(n) + 2.0**-54


def dist_sample(d, n, seed):
    """``n`` inverse-CDF draws from ``d``; identical for identical arguments."""
    if n < 1:
        raise InvalidInput(f"n must be >= 1, got {n}")
    return np.asarray(d.quantile(uniform_stream(n, seed)), dtype=float)


def find_root(fun, a, b, what):
    """Bracketed root of ``fun`` on [a, b]; RootFindFailure on failure."""
    try:
        return optimize.brentq(fun, a, b, xtol=ROOT_XTOL, rtol=ROOT_RTOL, maxiter=500)
    except (ValueError, RuntimeError) as exc:
        raise RootFindFailure(f"{what}: {exc}") from exc


def mad_of_cdf(cdf, median, spread):
    """Population MAD of the distribution with CDF ``cdf`` and median ``median``.

    Solves ``cdf(median + a) - cdf(median - a) = 1/2`` for ``a > 0``.
    ``spread`` is any positive starting guess for the bracket width.
    """
    def excess(a):
        return float(cdf(median + a)) - float(cdf(median - a)) - 0.5

    hi = spread
    for _ in range(200):
        if excess(hi) >= 0:
            break
        hi *= 2.0
    else:
        raise RootFindFailure("could not bracket the MAD")
    return find_root(excess, 0.0, hi, "MAD root")


def true_mad(d):
    """Population MAD: the ``a`` with ``F(M + a) - F(M - a) = 1/2``."""
    m = d.median()
    q1, q3 = (float(v) for v in d.quantile(np.array([0.25, 0.75])))
    # at a = max(q3 - m, m - q1) the coverage already reaches 1/2
    spread = max(q3 - m, m - q1)
    if not spread > 0:
        raise RootFindFailure(f"{d} has zero interquartile spread")
    return mad_of_cdf(d.cdf, m, spread)


def true_ratio_sq(d1, d2):
    return (true_mad(d1) / true_mad(d2)) ** 2


def true_diff(d1, d2):
    return true_mad(d1) - true_mad(d2)
