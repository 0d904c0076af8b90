"""Confidence intervals for median absolute deviations (MADs).

Single-sample intervals for the MAD, and intervals for the difference and
the squared ratio of two independent MADs. Asymptotic variances use a
generalized lambda distribution fitted to each sample. Also included:
influence functions, exact reference distributions, and a Monte-Carlo
coverage harness.
"""

from .asymptotics import (
    MadAsvTerms,
    asv_mad,
    asv_mad_estimated,
    asv_mad_exact,
    asv_terms,
    estimate_mad_asv,
    exact_asv_terms,
    if_mad,
    pif_curve,
    pif_diff,
    pif_ratio_sq,
)
from .core import clean_sample, empirical_quantile, sample_mad, sample_median
from .distributions import (
    ChiSquare,
    Exponential,
    Gld,
    LogNormal,
    Pareto,
    dist_cdf,
    dist_pdf,
    dist_quantile,
    dist_sample,
    parse_dist,
    true_diff,
    true_mad,
    true_ratio_sq,
)
from .errors import *  # noqa: F401,F403
from .gld import GldParams, fit_gld, fit_gld_full, gld_cdf, gld_density, gld_quantile
from .intervals import ConfidenceInterval, ci_diff_mads, ci_mad, ci_ratio_sq_mads
from .simulation import CoverageSummary, SimulationPlan, run_coverage, width_summary

__version__ = "0.1.0"
