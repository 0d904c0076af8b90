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
# # A confidence interval for one MAD
#
# The MAD here is the plain median of absolute deviations from the median,
# with no normal-consistency constant. Its asymptotic variance depends on the
# density at the median and at the median plus or minus the MAD, so the
# interval needs a density estimate. `madci` fits a generalized lambda
# distribution (GLD) to the sample and reads the density off the fit.

# %%
import numpy as np

import madci
from madci.distributions import LogNormal

# %%
x = madci.dist_sample(LogNormal(0, 1), 500, seed=2024)
print("median", madci.sample_median(x))
print("MAD   ", madci.sample_mad(x))
print("true  ", madci.true_mad(LogNormal(0, 1)))

# %% [markdown]
# `ci_mad` returns the interval; the details hold the fitted GLD and the
# plug-in variance terms.

# %%
ci = madci.ci_mad(x, level=0.95)
print(ci)
est = ci.details[0]
print("fitted GLD", est.fit.params.as_tuple())
print("estimated ASV", est.asv, "exact ASV", madci.asv_mad_exact(LogNormal(0, 1)))

# %% [markdown]
# Widths shrink like one over the square root of n.

# %%
for n in (100, 400, 1600):
    ci = madci.ci_mad(madci.dist_sample(LogNormal(0, 1), n, seed=n))
    print(f"n={n:5d}  [{ci.lower:.3f}, {ci.upper:.3f}]  width {ci.width:.3f}")

# %% [markdown]
# Replacing 40% of the sample by a huge value moves the MAD by a bounded
# amount, while the standard deviation follows the outliers.

# %%
y = x.copy()
y[:200] = 1e6
print("MAD before", madci.sample_mad(x), "after", madci.sample_mad(y))
print("SD  before", np.std(x), "after", np.std(y))
