"""Poincare ball model and its gyrovector operations.

Ball points are length-``d`` arrays with norm < 1.  ``to_poincare`` and
``from_poincare`` are the stereographic projection from ``(-1, 0, ..., 0)``
and its inverse; under them hyperboloid translations become left Mobius
addition and rotations act linearly.
"""

import numpy as np

from .errors import NumericalError, ValidationError
from .isometry import is_orthogonal
from .lorentz import as_pointset, check_point

#: Lifting refuses points this close to the boundary.
BOUNDARY_TOL = 1e-12


def _sqnorm(y):
    return np.sum(y * y, axis=-1)


def _as_ball(y):
    y = np.asarray(y, dtype=float)
    if y.ndim == 0:
        raise ValidationError("ball points are vectors")
    if not np.all(np.isfinite(y)):
        raise ValidationError("ball point has non-finite coordinates")
    if np.any(_sqnorm(y) >= 1.0):
        raise ValidationError("point is not inside the open unit ball")
    return y


def to_poincare(x):
    """``x -> x[1:] / (1 + x[0])``, vectorized over rows."""
    x = np.asarray(x, dtype=float)
    x = as_pointset(x) if x.ndim == 2 else check_point(x)
    return x[..., 1:] / (1.0 + x[..., :1])


def from_poincare(y):
    """Inverse stereographic projection ``(1 + |y|^2, 2y) / (1 - |y|^2)``."""
    y = _as_ball(y)
    n2 = _sqnorm(y)[..., None]
    if np.any(np.sqrt(n2) >= 1.0 - BOUNDARY_TOL):
        raise ValidationError("ball point too close to the boundary to lift")
    return np.concatenate([1.0 + n2, 2.0 * y], axis=-1) / (1.0 - n2)


def mobius_add(u, v):
    """Mobius addition ``u (+) v`` in the unit ball."""
    u = _as_ball(u)
    v = _as_ball(v)
    uv = np.sum(u * v, axis=-1)[..., None]
    u2 = _sqnorm(u)[..., None]
    v2 = _sqnorm(v)[..., None]
    den = 1.0 + 2.0 * uv + u2 * v2
    if np.any(den <= 1e-300):
        raise NumericalError("Mobius addition denominator vanished")
    return ((1.0 + 2.0 * uv + v2) * u + (1.0 - u2) * v) / den


def gyration(u, v, w):
    """``gyr[u, v] w = -(u (+) v) (+) (u (+) (v (+) w))``."""
    return mobius_add(-mobius_add(u, v), mobius_add(u, mobius_add(v, w)))


def poincare_distance(y, y2):
    """``2 atanh |(-y) (+) y2|``."""
    diff = mobius_add(-_as_ball(y), y2)
    d = 2.0 * np.arctanh(np.sqrt(_sqnorm(diff)))
    return float(d) if np.ndim(d) == 0 else d


def poincare_translate(b, y):
    """Left Mobius translation ``y -> b (+) y``.

    With ``b = to_poincare(lift(c))`` this is the ball image of
    ``translation_matrix(c)``.
    """
    return mobius_add(b, y)


def poincare_rotate(U, y):
    """Ball image of ``rotation_matrix(U)``: plain ``U @ y``."""
    U = np.atleast_2d(np.asarray(U, dtype=float))
    if not is_orthogonal(U):
        raise ValidationError("rotation factor must be orthogonal")
    y = _as_ball(y)
    return y @ U.T
