"""Points of the hyperboloid ('Loid) model and the Lorentzian form.

A point of d-dimensional hyperbolic space is stored as a float array of
length ``d + 1`` on the upper sheet ``[x, x] = -1, x[0] > 0``.  A point
set is an ``(N, d + 1)`` array with one point per row.  Everything here
is vectorized over leading axes.
"""

import numpy as np

from .errors import ValidationError

#: Admissible |[x, x] + 1|, scaled by x[0]**2 (see ``on_sheet``).
MANIFOLD_TOL = 1e-9


def metric(d):
    """Return ``H = diag(-1, 1, ..., 1)`` of size ``d + 1``."""
    H = np.eye(d + 1)
    H[0, 0] = -1.0
    return H


def lorentzian_inner(u, v):
    """Lorentzian inner product ``-u[0] v[0] + sum_i u[i] v[i]``.

    Works on single vectors or on stacks along the last axis.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape[-1] != v.shape[-1]:
        raise ValidationError(
            f"dimension mismatch: {u.shape[-1]} vs {v.shape[-1]}")
    if u.shape[-1] < 2:
        raise ValidationError("Lorentzian vectors need length >= 2")
    return np.sum(u[..., 1:] * v[..., 1:], axis=-1) - u[..., 0] * v[..., 0]


def origin(d):
    """The base point ``(1, 0, ..., 0)`` of the d-dimensional sheet."""
    if d < 1:
        raise ValidationError("dimension must be >= 1")
    x = np.zeros(d + 1)
    x[0] = 1.0
    return x


def on_sheet(x, tol=MANIFOLD_TOL):
    """Boolean mask of rows lying on the upper sheet.

    The residual ``|[x, x] + 1|`` is compared against ``tol * x[0]**2``
    so that far-out points are not rejected for ordinary round-off.
    """
    x = np.asarray(x, dtype=float)
    if x.shape[-1] < 2:
        return np.zeros(x.shape[:-1], dtype=bool)
    with np.errstate(invalid="ignore", over="ignore"):
        resid = np.abs(lorentzian_inner(x, x) + 1.0)
        scale = np.maximum(1.0, x[..., 0] ** 2)
        ok = (x[..., 0] > 0) & (resid <= tol * scale)
    return ok & np.all(np.isfinite(x), axis=-1)


def check_point(x, tol=MANIFOLD_TOL):
    """Validate a single point and return it as a float array."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValidationError(f"expected a vector, got shape {x.shape}")
    if x.shape[0] < 2:
        raise ValidationError("points need d >= 1")
    if not on_sheet(x, tol):
        raise ValidationError(f"point is not on the hyperboloid: {x}")
    return x


def as_pointset(X, tol=MANIFOLD_TOL):
    """Validate an ``(N, d + 1)`` point set; a single point is promoted."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValidationError(f"expected (N, d+1) array, got shape {X.shape}")
    if X.shape[0] < 1:
        raise ValidationError("point set is empty")
    if X.shape[1] < 2:
        raise ValidationError("points need d >= 1")
    bad = ~on_sheet(X, tol)
    if np.any(bad):
        rows = np.flatnonzero(bad)
        raise ValidationError(
            f"{len(rows)} row(s) off the hyperboloid, first at index {rows[0]}")
    return X


def renormalize(x):
    """Recompute coordinate 0 from the tail so the point sits on the sheet."""
    x = np.array(x, dtype=float, copy=True)
    x[..., 0] = np.sqrt(1.0 + np.sum(x[..., 1:] ** 2, axis=-1))
    return x


def project(x):
    """Drop coordinate 0: the map from the sheet to ``R^d``."""
    x = np.asarray(x, dtype=float)
    return x[..., 1:].copy()


def lift(z):
    """Inverse of ``project``: ``z -> (sqrt(1 + |z|^2), z)``."""
    z = np.asarray(z, dtype=float)
    if z.ndim == 0:
        raise ValidationError("lift expects a vector")
    if not np.all(np.isfinite(z)):
        raise ValidationError("lift requires finite coordinates")
    head = np.sqrt(1.0 + np.sum(z * z, axis=-1, keepdims=True))
    return np.concatenate([head, z], axis=-1)


def _distance(x, y):
    # Near the diagonal acosh(u) loses half the digits (acosh(1 + t) ~
    # sqrt(2t)), so use 2 asinh(|x - y|_L / 2) there; [x-y, x-y] = 2(u - 1).
    diff = x - y
    sq = np.sum(diff[..., 1:] ** 2, axis=-1) - diff[..., 0] ** 2
    u = np.sum(x[..., 1:] * y[..., 1:], axis=-1) - x[..., 0] * y[..., 0]
    u = -u
    near = 2.0 * np.arcsinh(0.5 * np.sqrt(np.maximum(sq, 0.0)))
    far = np.arccosh(np.maximum(u, 1.0))
    return np.where(u < 2.0, near, far)


def loid_distance(x, y):
    """Geodesic distance ``acosh(-[x, y])`` between points on the sheet.

    Both arguments may be single points or equally shaped stacks.  The
    argument of acosh is clamped at 1, and close pairs are evaluated
    through the chordal form so coincident points give exactly 0.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape[-1] != y.shape[-1]:
        raise ValidationError(
            f"dimension mismatch: {x.shape[-1]} vs {y.shape[-1]}")
    if not (np.all(on_sheet(x)) and np.all(on_sheet(y))):
        raise ValidationError("loid_distance called with off-sheet points")
    d = _distance(x, y)
    return float(d) if np.ndim(d) == 0 else d
