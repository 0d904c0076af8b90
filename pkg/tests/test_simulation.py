import math

import numpy as np
import pytest

from madci import simulation
from madci.distributions import Exponential, LogNormal, Pareto
from madci.errors import DegenerateSample, EmptyInput, InvalidInput
from madci.simulation import (
    SimulationPlan,
    TrialResults,
    run_coverage,
    summarize,
    trial_seed,
    width_summary,
)

SCHEMA = [
    "measure", "dist1", "dist2", "n1", "n2", "trials", "level", "coverage", "mean_width",
    "median_width", "heavy_tail_flag", "failed_trials", "truth", "seed",
]


@pytest.mark.parametrize(
    "widths, expected, heavy",
    [([1, 1, 1, 1], (1, 1), False), ([1, 1, 1, 1000], (250.75, 1), True), ([2, 4], (3, 3), False)],
)
def test_width_summary(widths, expected, heavy):
    mean, median = width_summary(widths)
    assert (mean, median) == expected
    assert simulation.is_heavy_tailed(mean, median) is heavy


def test_width_summary_empty():
    with pytest.raises(EmptyInput):
        width_summary([])


def test_plan_validation():
    with pytest.raises(InvalidInput):
        SimulationPlan(Exponential(1), 100, measure="ratio_sq")
    with pytest.raises(InvalidInput):
        SimulationPlan(Exponential(1), 100, trials=0)
    with pytest.raises(InvalidInput):
        SimulationPlan(Exponential(1), 100, measure="variance")


def test_trial_seeds_distinct_and_pure():
    seeds = {trial_seed(1, t, j) for t in range(500) for j in (1, 2)}
    assert len(seeds) == 1000
    assert trial_seed(1, 3, 1) == trial_seed(1, 3, 1)
    assert trial_seed(1, 3, 1) != trial_seed(2, 3, 1)


def test_summarize_counts():
    plan = SimulationPlan(Exponential(1), 100, trials=4, level=0.95)
    res = TrialResults(
        mad1=np.array([0.48, 0.9, 0.5, 0.48]),
        asv1=np.array([0.5, 0.5, np.nan, 0.5]),
        n1=100,
    )
    s = summarize(plan, res, truth=0.48)
    half = 1.959963984540054 * math.sqrt(0.005)
    assert s.failed_trials == 1
    assert s.successful_trials == 3
    assert s.coverage == pytest.approx(2 / 3)
    assert s.mean_width == pytest.approx(2 * half)


def test_summarize_two_sample_failures():
    plan = SimulationPlan(Exponential(1), 100, "diff", Exponential(1), 100, trials=2)
    res = TrialResults(np.array([0.5, 0.5]), np.array([0.5, 0.5]), 100,
                       np.array([0.5, 0.5]), np.array([0.5, np.nan]), 100)
    s = summarize(plan, res, truth=0.0)
    assert (s.failed_trials, s.coverage) == (1, 1.0)


@pytest.fixture(scope="module")
def small_plan():
    return SimulationPlan(LogNormal(0, 1), 100, "ratio_sq", Pareto(1, 7), 80, trials=30, seed=5)


def test_determinism(small_plan):
    a = run_coverage(small_plan)
    b = run_coverage(small_plan)
    assert a == b


def test_worker_count_invariance(small_plan):
    assert run_coverage(small_plan, workers=1) == run_coverage(small_plan, workers=2)


def test_shared_trials_across_measures(small_plan):
    res = simulation.simulate_trials(LogNormal(0, 1), 100, 30, 5, Pareto(1, 7), 80)
    diff_plan = SimulationPlan(LogNormal(0, 1), 100, "diff", Pareto(1, 7), 80, trials=30, seed=5)
    assert summarize(small_plan, res) == run_coverage(small_plan)
    assert summarize(diff_plan, res) == run_coverage(diff_plan)


def test_failed_trials_are_reported(monkeypatch):
    real = simulation.estimate_mad_asv
    calls = {"n": 0}

    def flaky(x):
        calls["n"] += 1
        if calls["n"] % 5 == 0:
            raise DegenerateSample("forced")
        return real(x)

    monkeypatch.setattr(simulation, "estimate_mad_asv", flaky)
    s = run_coverage(SimulationPlan(Exponential(1), 100, trials=20, seed=3))
    assert s.failed_trials == 4
    assert s.successful_trials == 16


def test_row_schema(small_plan):
    row = run_coverage(small_plan).as_row(small_plan)
    assert list(row) == SCHEMA
    assert row["dist1"] == "lognormal:0,1" and row["dist2"] == "pareto:1,7"
    assert 0 <= row["coverage"] <= 1
