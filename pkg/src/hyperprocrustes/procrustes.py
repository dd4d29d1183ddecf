"""Closed-form hyperbolic Procrustes alignment.

The pipeline mirrors the Euclidean one: translate each set so its
projected mean is zero, solve an orthogonal Procrustes problem on the
projected coordinates, then undo the two centering translations::

    R_est = R_{m_target} @ R_U @ R_{-m_source}
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import isometry
from .errors import ValidationError
from .lorentz import _distance, as_pointset, lorentzian_inner

#: Largest |mean(P(X))| accepted as "centered" by ``estimate_rotation``.
CENTERED_TOL = 1e-6


@dataclass
class AlignmentResult:
    """An estimated isometry mapping ``source`` onto ``target``.

    ``R_est`` always equals ``R_{m_target} @ R_{U_hat} @ R_{-m_source}``.
    Iterative estimators have no centroids; they report the factorization
    ``R_est = R_c @ R_V`` as ``m_target = c``, ``U_hat = V`` and a zero
    ``m_source``.
    """

    R_est: np.ndarray
    m_target: np.ndarray
    m_source: np.ndarray
    U_hat: np.ndarray
    residual: float
    iterations: int = 0
    history: list = field(default_factory=list)
    converged: Optional[bool] = None
    skipped: int = 0

    @property
    def d(self):
        return self.R_est.shape[0] - 1

    def factors(self):
        """``(b, U)`` with ``R_est = translation_matrix(b) @ rotation_matrix(U)``."""
        return isometry.factor(self.R_est)

    def transform(self, X):
        return isometry.apply(self.R_est, X)


def _check_pair(X, Y):
    X = as_pointset(X)
    Y = as_pointset(Y)
    if X.shape != Y.shape:
        raise ValidationError(f"point sets differ in shape: {X.shape} vs {Y.shape}")
    return X, Y


def _check_weights(w, n):
    if w is None:
        return np.ones(n)
    w = np.asarray(w, dtype=float).ravel()
    if w.shape[0] != n:
        raise ValidationError(f"expected {n} weights, got {w.shape[0]}")
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        raise ValidationError("weights must be finite and strictly positive")
    return w


def normalized_discrepancy(X, Y):
    """Mean geodesic distance between matched rows, divided by ``d``."""
    X, Y = _check_pair(X, Y)
    n, d = X.shape[0], X.shape[1] - 1
    return float(np.sum(_distance(X, Y)) / (n * d))


def centroid(X):
    """Translation parameter ``m`` whose inverse translation centers ``X``.

    ``m = mean(P(x_n)) / sqrt(-[xbar, xbar])`` with ``xbar`` the
    coordinate-wise mean of the rows.
    """
    X = as_pointset(X)
    xbar = X.mean(axis=0)
    return X[:, 1:].mean(axis=0) / np.sqrt(-lorentzian_inner(xbar, xbar))


def center(X):
    """Return ``(R_{-m} X, m)``; the projected mean of the output is zero."""
    m = centroid(X)
    return isometry.apply(isometry.translation_matrix(-m), X), m


def procrustes_rotation(A, B, w=None):
    """Orthogonal ``U`` maximizing ``sum_n w_n <a_n, U b_n>`` over O(d).

    ``A`` and ``B`` are ``(N, d)`` arrays of Euclidean rows.  Ties in the
    singular values make the maximizer non-unique; whichever one the SVD
    backend yields is returned.
    """
    M = A.T @ B if w is None else (A * w[:, None]).T @ B
    Ul, _, Vt = np.linalg.svd(M)
    return Ul @ Vt


def rotation_cost(Xc, Yc, U, w=None):
    """Weighted ``sum_n w_n cosh d(xc_n, R_U yc_n)`` for centered sets."""
    Z = Yc[:, 1:] @ np.asarray(U).T
    vals = Xc[:, 0] * Yc[:, 0] - np.sum(Xc[:, 1:] * Z, axis=1)
    return float(vals.sum() if w is None else w @ vals)


def estimate_rotation(Xc, Yc, w=None):
    """Optimal rotation between two centered point sets.

    Parameters
    ----------
    Xc, Yc : ndarray, shape (N, d + 1)
        Centered target and source sets (projected means ~ 0).
    w : array_like, optional
        Positive per-point weights; uniform when omitted.

    Returns
    -------
    U : ndarray, shape (d, d)
        ``U_l @ U_r.T`` from the SVD of ``sum_n w_n P(xc_n) P(yc_n)^T``.
        No determinant correction: reflections are valid answers.
    """
    Xc, Yc = _check_pair(Xc, Yc)
    w = _check_weights(w, Xc.shape[0])
    for name, S in (("target", Xc), ("source", Yc)):
        off = np.linalg.norm(S[:, 1:].mean(axis=0))
        if off > CENTERED_TOL:
            raise ValidationError(
                f"{name} set is not centered (|mean P| = {off:.3g})")
    return procrustes_rotation(Xc[:, 1:], Yc[:, 1:], w)


def align(target, source, w=None):
    """Closed-form isometry taking ``source`` rows onto ``target`` rows.

    Exact (residual at round-off level) whenever the sets are related by
    an isometry; for noisy sets it is the centered-SVD estimate.
    """
    target, source = _check_pair(target, source)
    w = _check_weights(w, target.shape[0])
    Xc, m_t = center(target)
    Yc, m_s = center(source)
    U = estimate_rotation(Xc, Yc, w)
    R = (isometry.translation_matrix(m_t)
         @ isometry.rotation_matrix(U)
         @ isometry.translation_matrix(-m_s))
    resid = normalized_discrepancy(target, isometry.apply(R, source))
    return AlignmentResult(R_est=R, m_target=m_t, m_source=m_s, U_hat=U,
                           residual=resid)
