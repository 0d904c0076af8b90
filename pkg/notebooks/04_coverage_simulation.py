# ---
# jupyter:
#   jupytext:
#     formats: ipynb,py:percent
#     text_representation:
#       extension: .py
#       format_name: percent
#       format_version: '1.3'
#   kernelspec:
#     display_name: Python 3
#     language: python
#     name: python3
# ---

# %% [markdown]
# # Checking coverage by simulation
#
# Every trial's sample is a pure function of the plan seed and the trial
# index, so results are identical for any number of worker processes. Trial
# counts here are small to keep the script quick; the acceptance suite uses
# 2000 per cell.

# %%
import madci
from madci.distributions import Exponential, Pareto
from madci.simulation import SimulationPlan, run_coverage, simulate_trials, summarize

plan = SimulationPlan(Exponential(1), 200, "mad", trials=300, seed=1)
s = run_coverage(plan)
print(s.as_row(plan))

# %% [markdown]
# The ratio and difference intervals can share the same simulated samples.

# %%
d1, d2 = Pareto(1, 7), Pareto(1, 3)
trials = simulate_trials(d1, 200, 300, seed=2, dist2=d2, n2=200)
for measure in ("ratio_sq", "diff"):
    p = SimulationPlan(d1, 200, measure, d2, 200, trials=300, seed=2)
    r = summarize(p, trials)
    print(measure, f"coverage {r.coverage:.3f}  width {r.reported_width:.4f}  truth {r.truth:.4f}")
