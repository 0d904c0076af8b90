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
# # The generalized lambda distribution
#
# The FKML parameterization has quantile function
# Q(p) = l1 + (T(p, l3) - T(1 - p, l4)) / l2 with T(p, l) = (p**l - 1) / l,
# which tends to log(p) as l goes to 0. Shapes (0, 0) give the logistic
# distribution and (1, 1) a uniform.

# %%
import numpy as np

import madci
from madci.gld import GldParams, gld_cdf, gld_density, gld_quantile, gld_support

for shape in ((0, 0), (1, 1), (0.13, 0.13), (-0.2, 0.5)):
    g = GldParams(0, 1, *shape)
    q = gld_quantile(g, np.array([0.1, 0.5, 0.9]))
    print(shape, "support", gld_support(g), "quantiles", np.round(q, 4))

# %% [markdown]
# Fitting minimizes the squared distance between model and sample quantiles
# on p = 0.01, ..., 0.99 with a multi-start Nelder-Mead search over the shapes.

# %%
truth = GldParams(0, 1, 0.13, 0.13)
x = madci.dist_sample(madci.Gld(truth), 5000, seed=3)
fit = madci.fit_gld_full(x)
print("fitted", np.round(fit.params.as_tuple(), 4), "objective", fit.objective)
p = np.arange(1, 100) / 100
print("max quantile error", np.abs(gld_quantile(fit.params, p) - gld_quantile(truth, p)).max())

# %%
xs = gld_quantile(fit.params, np.array([0.25, 0.5, 0.75]))
print("cdf", gld_cdf(fit.params, xs), "density", gld_density(fit.params, xs))
