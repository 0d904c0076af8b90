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
# # Comparing the spread of two groups
#
# Two independent samples give intervals for the difference of MADs and for
# their squared ratio. The ratio interval is built on the log scale, so its
# lower end stays positive and swapping the groups inverts it.

# %%
import madci
from madci.distributions import ChiSquare

d1, d2 = ChiSquare(5), ChiSquare(2)
a = madci.dist_sample(d1, 300, seed=1)
b = madci.dist_sample(d2, 300, seed=2)
print("true ratio", madci.true_ratio_sq(d1, d2), "true difference", madci.true_diff(d1, d2))

# %%
r = madci.ci_ratio_sq_mads(a, b)
d = madci.ci_diff_mads(a, b)
print("squared ratio", r.estimate, (r.lower, r.upper))
print("difference   ", d.estimate, (d.lower, d.upper))

# %% [markdown]
# Swapping the groups: the ratio interval inverts and the difference
# interval flips sign.

# %%
r_swap = madci.ci_ratio_sq_mads(b, a)
d_swap = madci.ci_diff_mads(b, a)
print(1 / r_swap.upper, 1 / r_swap.lower)
print(-d_swap.upper, -d_swap.lower)

# %% [markdown]
# An outlier in one group barely moves either interval.

# %%
a_bad = a.copy()
a_bad[0] = 1e4
print(madci.ci_ratio_sq_mads(a_bad, b))
