"""Gradient-descent alignment and refinement of an isometry estimate.

Each iteration takes a small translation step against the gradient of
the normalized discrepancy, then re-solves the rotation exactly::

    b   = -alpha * grad_b e(X, R_b R X')|_{b=0}
    U   = argmax_U sum_n [x_n, R_U R_b R x'_n]
    R  <- R_U R_b R

By default a step is only accepted if it lowers the discrepancy (alpha
is halved until it does).  ``backtrack=False`` runs the plain fixed-step
iteration, which is allowed to stall or diverge.
"""

from dataclasses import dataclass

import numpy as np

from . import isometry
from .errors import NumericalError, ValidationError
from .lorentz import _distance
from .procrustes import AlignmentResult, _check_pair, procrustes_rotation

#: Pairs with -[x, y] below 1 + this are at the kink of acosh and skipped.
COINCIDENT_TOL = 1e-12
_REPROJECT_EVERY = 25


@dataclass(frozen=True)
class GdConfig:
    alpha: float = 0.05
    max_iters: int = 500
    stop_tol: float = 1e-12
    backtrack: bool = True
    max_halvings: int = 20

    def __post_init__(self):
        if not (np.isfinite(self.alpha) and self.alpha > 0):
            raise ValidationError("alpha must be a positive finite number")
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise ValidationError("max_iters must be a positive integer")
        if not self.stop_tol > 0:
            raise ValidationError("stop_tol must be positive")
        if self.max_halvings < 0:
            raise ValidationError("max_halvings must be >= 0")


def _translation(b):
    # translation_matrix without validation; hot loop only
    d = b.shape[0]
    s = np.sqrt(1.0 + b @ b)
    R = np.empty((d + 1, d + 1))
    R[0, 0] = s
    R[0, 1:] = b
    R[1:, 0] = b
    R[1:, 1:] = np.eye(d) + np.outer(b, b) / (1.0 + s)
    return R


def _on_sheet(Z):
    Z[:, 0] = np.sqrt(1.0 + np.einsum("ij,ij->i", Z[:, 1:], Z[:, 1:]))
    return Z


def _u_minus_one(X, Y):
    # -[x, y] - 1, through [x-y, x-y] / 2 for close pairs to keep digits
    diff = X - Y
    sq = np.einsum("ij,ij->i", diff[:, 1:], diff[:, 1:]) - diff[:, 0] ** 2
    u = X[:, 0] * Y[:, 0] - np.einsum("ij,ij->i", X[:, 1:], Y[:, 1:])
    return np.maximum(np.where(u < 2.0, 0.5 * sq, u - 1.0), 0.0)


def _discrepancy(X, Y):
    return _distance(X, Y).sum() / (X.shape[0] * (X.shape[1] - 1))


def _gradient(X, Y):
    um1 = _u_minus_one(X, Y)
    keep = um1 >= COINCIDENT_TOL
    n, d = X.shape[0], X.shape[1] - 1
    # d/db_i of -[x, R_b y] at b = 0 is x0 y_i - y0 x_i
    du = X[:, :1] * Y[:, 1:] - Y[:, :1] * X[:, 1:]
    scale = np.zeros(n)
    scale[keep] = 1.0 / np.sqrt(um1[keep] * (um1[keep] + 2.0))
    return scale @ du / (n * d), int(n - keep.sum())


def discrepancy_gradient_b(X, Y, return_skipped=False):
    """Gradient of ``b -> e(X, R_b Y)`` at ``b = 0``.

    Uses ``d acosh(u)/du = 1/sqrt(u^2 - 1)`` and ``dR_b/db_i = E_i`` (ones
    at (0, i) and (i, 0)).  Pairs that coincide to within
    ``COINCIDENT_TOL`` sit on the non-differentiable point of the
    distance and contribute nothing; pass ``return_skipped=True`` to also
    get how many were dropped.
    """
    X, Y = _check_pair(X, Y)
    g, skipped = _gradient(X, Y)
    return (g, skipped) if return_skipped else g


def _result(R, target, source, iterations, history, converged, skipped):
    R = isometry.reproject(R)
    Y = _on_sheet(source @ R.T)
    c, V = isometry.factor(R)
    return AlignmentResult(R_est=R, m_target=c, m_source=np.zeros_like(c),
                           U_hat=V, residual=float(_discrepancy(target, Y)),
                           iterations=iterations, history=history,
                           converged=converged, skipped=skipped)


def gd_align(target, source, cfg=None):
    """Align ``source`` to ``target`` by gradient descent from the identity.

    Convergence is not guaranteed: from a poor start the translation
    steps can be far too short (or, without backtracking, too long).
    ``result.history`` holds the discrepancy after every iteration.
    """
    cfg = GdConfig() if cfg is None else cfg
    X, Xp = _check_pair(target, source)
    return _run(X, Xp, cfg)


def _run(X, Xp, cfg):
    d = X.shape[1] - 1
    R = np.eye(d + 1)
    Y = Xp.copy()
    e = _discrepancy(X, Y)
    history = [float(e)]
    skipped = 0
    converged = None
    it = 0
    Xt = X[:, 1:]
    tries = cfg.max_halvings + 1 if cfg.backtrack else 1
    while it < cfg.max_iters:
        if e == 0.0:
            converged = True
            break
        it += 1
        g, sk = _gradient(X, Y)
        skipped += sk
        alpha = cfg.alpha
        accepted = False
        for _ in range(tries):
            Rb = _translation(-alpha * g)
            Z = _on_sheet(Y @ Rb.T)
            U = procrustes_rotation(Xt, Z[:, 1:])
            Z[:, 1:] = Z[:, 1:] @ U.T
            e_new = _discrepancy(X, Z)
            if not np.isfinite(e_new):
                raise NumericalError("discrepancy became non-finite")
            if not cfg.backtrack or e_new < e:
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            converged = True
            break
        Ru = np.eye(d + 1)
        Ru[1:, 1:] = U
        R = Ru @ Rb @ R
        if it % _REPROJECT_EVERY == 0:
            R = isometry.reproject(R)
        Y = Z
        change = e - e_new
        e = e_new
        history.append(float(e))
        if abs(change) < cfg.stop_tol:
            converged = True
            break
    else:
        converged = False
    return _result(R, X, Xp, it, history, converged, skipped)


def refine(target, source, R_init, cfg=None):
    """Fine-tune ``R_init`` by running ``gd_align`` on ``(target, R_init source)``.

    Returns the composed isometry ``R_gd @ R_init``.  With backtracking
    on, its residual never exceeds that of ``R_init`` beyond round-off.
    """
    cfg = GdConfig() if cfg is None else cfg
    X, Xp = _check_pair(target, source)
    R_init = isometry.check_hunitary(R_init)
    if R_init.shape[0] != X.shape[1]:
        raise ValidationError("R_init does not match the point dimension")
    inner = _run(X, isometry.apply(R_init, Xp), cfg)
    R = inner.R_est @ R_init
    return _result(R, X, Xp, inner.iterations, inner.history,
                   inner.converged, inner.skipped)
