"""Reference computations that share no code with the library paths."""

import numpy as np
from scipy.optimize import minimize_scalar


def _rot(theta, reflect):
    c, s = np.cos(theta), np.sin(theta)
    if reflect:
        return np.array([[c, s], [s, -c]])
    return np.array([[c, -s], [s, c]])


def cosh_cost(Xc, Yc, U, w):
    """sum_n w_n cosh d(x_n, diag(1, U) y_n), straight from -[x, R y]."""
    total = 0.0
    for x, y, wn in zip(Xc, Yc, w):
        Ry = np.concatenate([[y[0]], U @ y[1:]])
        total += wn * (x[0] * Ry[0] - x[1:] @ Ry[1:])
    return total


def brute_force_o2(Xc, Yc, w, step=1e-4):
    """Minimize the weighted cosh cost over O(2) by grid + local search.

    Returns ``(best_cost, best_U)``.
    """
    a, b = Xc[:, 1:], Yc[:, 1:]
    base = np.sum(w * Xc[:, 0] * Yc[:, 0])
    thetas = np.arange(0.0, 2 * np.pi, step)
    c, s = np.cos(thetas), np.sin(thetas)
    # rotation: x^T R y = c (x.y) + s (x2 y1 - x1 y2)
    dot = np.sum(w * (a[:, 0] * b[:, 0] + a[:, 1] * b[:, 1]))
    crs = np.sum(w * (a[:, 1] * b[:, 0] - a[:, 0] * b[:, 1]))
    rot_cost = base - (c * dot + s * crs)
    # reflection [[c, s], [s, -c]]: x^T F y = c (x1 y1 - x2 y2) + s (x1 y2 + x2 y1)
    p = np.sum(w * (a[:, 0] * b[:, 0] - a[:, 1] * b[:, 1]))
    q = np.sum(w * (a[:, 0] * b[:, 1] + a[:, 1] * b[:, 0]))
    ref_cost = base - (c * p + s * q)
    best = None
    for reflect, costs in ((False, rot_cost), (True, ref_cost)):
        i = int(np.argmin(costs))
        res = minimize_scalar(
            lambda t: cosh_cost(Xc, Yc, _rot(t, reflect), w),
            bounds=(thetas[i] - step, thetas[i] + step), method="bounded",
            options={"xatol": 1e-12})
        cand = (res.fun, _rot(res.x, reflect))
        if best is None or cand[0] < best[0]:
            best = cand
    return best


def central_difference(f, b0, h=1e-6):
    g = np.zeros_like(b0)
    for i in range(b0.shape[0]):
        e = np.zeros_like(b0)
        e[i] = h
        g[i] = (f(b0 + e) - f(b0 - e)) / (2 * h)
    return g
