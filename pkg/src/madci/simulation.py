"""Monte-Carlo coverage of the MAD intervals.

Each trial's samples come from a seed that is a pure hash of
``(plan seed, trial index, sample index)``. Trials can therefore run in any
order or on any number of worker processes and the summary is unchanged.

Trials where the interval cannot be built (degenerate sample, GLD fit
failure, vanishing density) are counted in ``failed_trials`` and left out
of the coverage denominator.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
import math

import numpy as np

from .asymptotics import estimate_mad_asv
from .distributions import dist_sample, true_diff, true_mad, true_ratio_sq
from .errors import EmptyInput, InvalidInput, MadciError
from .intervals import diff_interval, mad_interval, ratio_sq_interval

__all__ = [
    "MEASURES",
    "SimulationPlan",
    "CoverageSummary",
    "TrialResults",
    "trial_seed",
    "simulate_trials",
    "summarize",
    "run_coverage",
    "plan_truth",
    "width_summary",
    "is_heavy_tailed",
]

MEASURES = ("mad", "ratio_sq", "diff")
HEAVY_TAIL_RATIO = 5.0


@dataclass(frozen=True)
class SimulationPlan:
    dist1: object
    n1: int
    measure: str = "mad"
    dist2: object = None
    n2: int = None
    trials: int = 2000
    level: float = 0.95
    seed: int = 0

    def __post_init__(self):
        if self.measure not in MEASURES:
            raise InvalidInput(f"measure must be one of {MEASURES}, got {self.measure!r}")
        if self.trials < 1:
            raise InvalidInput("trials must be >= 1")
        if self.n1 < 1:
            raise InvalidInput("n1 must be >= 1")
        if self.measure != "mad" and (self.dist2 is None or self.n2 is None):
            raise InvalidInput(f"measure {self.measure!r} needs dist2 and n2")
        if not 0 < self.level < 1:
            raise InvalidInput("level must lie in (0, 1)")

    @property
    def two_sample(self):
        return self.measure != "mad"


@dataclass(frozen=True)
class CoverageSummary:
    coverage: float
    mean_width: float
    median_width: float
    failed_trials: int
    truth: float
    successful_trials: int = 0

    @property
    def heavy_tail_flag(self):
        return is_heavy_tailed(self.mean_width, self.median_width)

    @property
    def reported_width(self):
        """Median width when the mean is dominated by a few huge intervals."""
        return self.median_width if self.heavy_tail_flag else self.mean_width

    def as_row(self, plan):
        return {
            "measure": plan.measure,
            "dist1": str(plan.dist1),
            "dist2": str(plan.dist2) if plan.dist2 is not None else None,
            "n1": plan.n1,
            "n2": plan.n2,
            "trials": plan.trials,
            "level": plan.level,
            "coverage": self.coverage,
            "mean_width": self.mean_width,
            "median_width": self.median_width,
            "heavy_tail_flag": self.heavy_tail_flag,
            "failed_trials": self.failed_trials,
            "truth": self.truth,
            "seed": plan.seed,
        }


@dataclass(frozen=True)
class TrialResults:
    """Per-trial sample MADs and estimated ASVs (NaN where estimation failed)."""

    mad1: np.ndarray
    asv1: np.ndarray
    n1: int
    mad2: np.ndarray = None
    asv2: np.ndarray = None
    n2: int = None


def trial_seed(seed, trial, sample=0):
    """64-bit seed for one sample of one trial, hashed from the plan seed."""
    ss = np.random.SeedSequence([int(seed), int(trial), int(sample)])
    return int(ss.generate_state(1, np.uint64)[0])


def _estimate(dist, n, seed):
    try:
        est = estimate_mad_asv(dist_sample(dist, n, seed))
    except MadciError:
        return math.nan, math.nan
    return est.mad, est.asv


def _run_chunk(args):
    dist1, n1, dist2, n2, seed, lo, hi = args
    out = np.full((hi - lo, 4), np.nan)
    for i, t in enumerate(range(lo, hi)):
        out[i, :2] = _estimate(dist1, n1, trial_seed(seed, t, 1))
        if dist2 is not None:
            out[i, 2:] = _estimate(dist2, n2, trial_seed(seed, t, 2))
    return out


def simulate_trials(dist1, n1, trials, seed, dist2=None, n2=None, workers=1, chunk=50):
    """Draw every trial's sample(s) and estimate MAD and ASV for each.

    The same trial results serve all measures: the ratio and difference
    intervals of one (dist1, dist2, n1, n2, seed) design share their samples.
    """
    bounds = [(lo, min(lo + chunk, trials)) for lo in range(0, trials, chunk)]
    jobs = [(dist1, n1, dist2, n2, seed, lo, hi) for lo, hi in bounds]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, jobs))
    else:
        parts = [_run_chunk(job) for job in jobs]
    data = np.vstack(parts) if parts else np.empty((0, 4))
    if dist2 is None:
        return TrialResults(data[:, 0], data[:, 1], n1)
    return TrialResults(data[:, 0], data[:, 1], n1, data[:, 2], data[:, 3], n2)


def width_summary(widths):
    """(mean, median) of interval widths."""
    w = np.asarray(widths, dtype=float)
    if w.size == 0:
        raise EmptyInput("no widths to summarize")
    return float(np.mean(w)), float(np.median(w))


def is_heavy_tailed(mean_width, median_width):
    return mean_width > HEAVY_TAIL_RATIO * median_width


def plan_truth(plan):
    if plan.measure == "mad":
        return true_mad(plan.dist1)
    if plan.measure == "ratio_sq":
        return true_ratio_sq(plan.dist1, plan.dist2)
    return true_diff(plan.dist1, plan.dist2)


def summarize(plan, results, truth=None):
    """Build each trial's interval from ``results`` and aggregate coverage."""
    if truth is None:
        truth = plan_truth(plan)
    hits = 0
    widths = []
    failed = 0
    for t in range(plan.trials):
        m1, a1 = results.mad1[t], results.asv1[t]
        if plan.two_sample:
            m2, a2 = results.mad2[t], results.asv2[t]
            if not (np.isfinite(a1) and np.isfinite(a2)):
                failed += 1
                continue
            if plan.measure == "diff":
                ci = diff_interval(m1, a1, results.n1, m2, a2, results.n2, plan.level)
            else:
                ci = ratio_sq_interval(m1, a1, results.n1, m2, a2, results.n2, plan.level)
        else:
            if not np.isfinite(a1):
                failed += 1
                continue
            ci = mad_interval(m1, a1, results.n1, plan.level)
        hits += bool(ci.lower <= truth <= ci.upper)
        widths.append(float(ci.upper - ci.lower))
    ok = plan.trials - failed
    truth = float(truth)
    if ok == 0:
        return CoverageSummary(math.nan, math.nan, math.nan, failed, truth, 0)
    mean_w, median_w = width_summary(widths)
    return CoverageSummary(hits / ok, mean_w, median_w, failed, truth, ok)


def run_coverage(plan, workers=1):
    """Simulated coverage and width summary for ``plan``."""
    truth = plan_truth(plan)
    dist2 = plan.dist2 if plan.two_sample else None
    n2 = plan.n2 if plan.two_sample else None
    results = simulate_trials(plan.dist1, plan.n1, plan.trials, plan.seed, dist2, n2, workers)
    return summarize(plan, results, truth)
