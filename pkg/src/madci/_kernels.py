"""Compiled kernels for the GLD quantile least-squares fit.

The fit runs tens of thousands of times inside the coverage simulations,
so the objective and the Nelder-Mead driver are numba-compiled. Everything
works on quantiles standardized by the sample median and IQR, which makes
the stopping tolerances scale-free.
"""

import numpy as np
from numba import njit

ZERO_SHAPE = 1e-8
SHAPE_BOUND = 50.0
BIG = 1e300

# Grid positions (0-based) of p = 0.25, 0.5, 0.75 on p_k = k/100.
I25, I50, I75 = 24, 49, 74


@njit(cache=True)
def shape_term(logp, lam):
    """(p**lam - 1)/lam with the log(p) limit at lam = 0."""
    if abs(lam) < ZERO_SHAPE:
        return logp
    return np.expm1(lam * logp) / lam


@njit(cache=True)
def standardized_objective(l3, l4, logp, log1mp, z):
    """Sum of squared errors between median/IQR-standardized GLD quantiles and ``z``."""
    if not (abs(l3) <= SHAPE_BOUND and abs(l4) <= SHAPE_BOUND):
        return BIG
    g = logp.shape[0]
    s = np.empty(g)
    for k in range(g):
        s[k] = shape_term(logp[k], l3) - shape_term(log1mp[k], l4)
    spread = s[I75] - s[I25]
    if not spread > 0.0:
        return BIG
    total = 0.0
    for k in range(g):
        r = (s[k] - s[I50]) / spread - z[k]
        total += r * r
    if not np.isfinite(total):
        return BIG
    return total


@njit(cache=True)
def nelder_mead(x0, y0, step, logp, log1mp, z, fatol, xatol, maxiter):
    """Two-dimensional Nelder-Mead with standard coefficients (1, 2, 1/2, 1/2).

    Stops when both the spread of objective values and the spread of the
    vertices fall below their tolerances, or after ``maxiter`` iterations.
    Returns (x, y, f, iterations, converged).
    """
    sx = np.array([x0, x0 + step, x0])
    sy = np.array([y0, y0, y0 + step])
    fv = np.empty(3)
    for i in range(3):
        fv[i] = standardized_objective(sx[i], sy[i], logp, log1mp, z)

    it = 0
    converged = False
    while it < maxiter:
        order = np.argsort(fv)
        sx = sx[order]
        sy = sy[order]
        fv = fv[order]
        fspread = max(abs(fv[1] - fv[0]), abs(fv[2] - fv[0]))
        xspread = max(
            max(abs(sx[1] - sx[0]), abs(sx[2] - sx[0])),
            max(abs(sy[1] - sy[0]), abs(sy[2] - sy[0])),
        )
        if fspread <= fatol and xspread <= xatol:
            converged = True
            break
        it += 1

        cx = 0.5 * (sx[0] + sx[1])
        cy = 0.5 * (sy[0] + sy[1])
        rx = 2.0 * cx - sx[2]
        ry = 2.0 * cy - sy[2]
        fr = standardized_objective(rx, ry, logp, log1mp, z)

        if fr < fv[0]:
            ex = 3.0 * cx - 2.0 * sx[2]
            ey = 3.0 * cy - 2.0 * sy[2]
            fe = standardized_objective(ex, ey, logp, log1mp, z)
            if fe < fr:
                sx[2], sy[2], fv[2] = ex, ey, fe
            else:
                sx[2], sy[2], fv[2] = rx, ry, fr
            continue
        if fr < fv[1]:
            sx[2], sy[2], fv[2] = rx, ry, fr
            continue

        if fr < fv[2]:
            # outside contraction
            kx = 1.5 * cx - 0.5 * sx[2]
            ky = 1.5 * cy - 0.5 * sy[2]
            fk = standardized_objective(kx, ky, logp, log1mp, z)
            if fk <= fr:
                sx[2], sy[2], fv[2] = kx, ky, fk
                continue
        else:
            kx = 0.5 * cx + 0.5 * sx[2]
            ky = 0.5 * cy + 0.5 * sy[2]
            fk = standardized_objective(kx, ky, logp, log1mp, z)
            if fk < fv[2]:
                sx[2], sy[2], fv[2] = kx, ky, fk
                continue

        # shrink toward the best vertex
        for i in range(1, 3):
            sx[i] = sx[0] + 0.5 * (sx[i] - sx[0])
            sy[i] = sy[0] + 0.5 * (sy[i] - sy[0])
            fv[i] = standardized_objective(sx[i], sy[i], logp, log1mp, z)

    best = 0
    for i in range(1, 3):
        if fv[i] < fv[best]:
            best = i
    return sx[best], sy[best], fv[best], it, converged


@njit(cache=True)
def multistart_fit(starts, step, logp, log1mp, z, fatol, xatol, maxiter):
    """Run Nelder-Mead from every row of ``starts``; pick the best converged run.

    Ties in the final objective (within 1e-12 relative) go to the smaller
    ``|l3| + |l4|``. Returns (l3, l4, f, start_index, iterations); the
    start index is -1 when no start converged to a finite objective.
    """
    best_i = -1
    best_x = 0.0
    best_y = 0.0
    best_f = BIG
    best_it = 0
    for i in range(starts.shape[0]):
        x, y, f, it, ok = nelder_mead(
            starts[i, 0], starts[i, 1], step, logp, log1mp, z, fatol, xatol, maxiter
        )
        if not ok or not f < BIG:
            continue
        if best_i < 0:
            take = True
        else:
            tol = 1e-12 * (1.0 + abs(best_f))
            if f < best_f - tol:
                take = True
            elif f <= best_f + tol:
                take = abs(x) + abs(y) < abs(best_x) + abs(best_y)
            else:
                take = False
        if take:
            best_i, best_x, best_y, best_f, best_it = i, x, y, f, it
    return best_x, best_y, best_f, best_i, best_it
