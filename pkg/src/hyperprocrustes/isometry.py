"""H-unitary matrices: the isometries of the hyperboloid model.

Every sheet-preserving isometry is a ``(d + 1) x (d + 1)`` matrix ``R``
with ``R.T @ H @ R = H`` and ``R[0, 0] > 0``.  It factors as a
translation times a rotation, ``R = translation_matrix(c) @
rotation_matrix(V)``, which is what ``factor`` recovers.
"""

import numpy as np

from .errors import NumericalError, ValidationError
from .lorentz import metric, renormalize

HUNITARY_TOL = 1e-8
ORTHOGONAL_TOL = 1e-8
#: Off-block mass tolerated after stripping the translation in ``factor``.
FACTOR_TOL = 1e-6


def _as_vector(b):
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if b.ndim != 1:
        raise ValidationError(f"expected a vector, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValidationError("translation parameter must be finite")
    return b


def _as_square(R):
    R = np.asarray(R, dtype=float)
    if R.ndim != 2 or R.shape[0] != R.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {R.shape}")
    return R


def is_orthogonal(U, tol=ORTHOGONAL_TOL):
    U = np.asarray(U, dtype=float)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    return bool(np.max(np.abs(U.T @ U - np.eye(U.shape[0]))) <= tol)


def is_hunitary(R, tol=HUNITARY_TOL):
    """True iff ``|R^T H R - H|_max <= tol`` and ``R[0, 0] > 0``."""
    R = np.asarray(R, dtype=float)
    if R.ndim != 2 or R.shape[0] != R.shape[1] or R.shape[0] < 2:
        return False
    if not np.all(np.isfinite(R)):
        return False
    H = metric(R.shape[0] - 1)
    return bool(np.max(np.abs(R.T @ H @ R - H)) <= tol and R[0, 0] > 0)


def check_hunitary(R, tol=HUNITARY_TOL):
    R = _as_square(R)
    if not is_hunitary(R, tol):
        raise ValidationError("matrix is not a sheet-preserving H-unitary")
    return R


def translation_matrix(b):
    """Hyperbolic translation ``R_b`` taking the origin to ``lift(b)``.

    The lower-right block ``(I + b b^T)^{1/2}`` is the rank-one update
    ``I + b b^T / (1 + sqrt(1 + |b|^2))``, which equals the textbook
    coefficient ``(sqrt(1 + |b|^2) - 1) / |b|^2`` without the 0/0 at b = 0.
    """
    b = _as_vector(b)
    d = b.shape[0]
    s = np.sqrt(1.0 + b @ b)
    R = np.empty((d + 1, d + 1))
    R[0, 0] = s
    R[0, 1:] = b
    R[1:, 0] = b
    R[1:, 1:] = np.eye(d) + np.outer(b, b) / (1.0 + s)
    return R


def rotation_matrix(U):
    """Block-diagonal ``diag(1, U)`` for an orthogonal ``U`` (reflections allowed)."""
    U = np.atleast_2d(np.asarray(U, dtype=float))
    if not is_orthogonal(U):
        raise ValidationError("rotation factor must be orthogonal")
    d = U.shape[0]
    R = np.zeros((d + 1, d + 1))
    R[0, 0] = 1.0
    R[1:, 1:] = U
    return R


def apply(R, x):
    """Apply ``R`` to a point or to every row of a point set.

    Coordinate 0 is recomputed from the tail afterwards to undo drift.
    """
    R = _as_square(R)
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != R.shape[0]:
        raise ValidationError(
            f"dimension mismatch: matrix {R.shape}, points {x.shape}")
    return renormalize(x @ R.T)


def compose(R1, R2, tol=HUNITARY_TOL):
    """Matrix product ``R1 @ R2``; raises if the result left the group."""
    R1 = _as_square(R1)
    R2 = _as_square(R2)
    if R1.shape != R2.shape:
        raise ValidationError(f"shape mismatch: {R1.shape} vs {R2.shape}")
    R = R1 @ R2
    if not is_hunitary(R, tol):
        raise NumericalError("product drifted off the H-unitary group")
    return R


def inverse(R):
    """H-adjoint ``H R^T H``, which is the inverse of an H-unitary ``R``."""
    R = check_hunitary(R)
    H = metric(R.shape[0] - 1)
    return H @ R.T @ H


def nearest_orthogonal(A):
    """Orthogonal polar factor of ``A``."""
    Ul, _, Vt = np.linalg.svd(A)
    return Ul @ Vt


def factor(R):
    """Split ``R`` into ``(c, V)`` with ``R = translation_matrix(c) @ rotation_matrix(V)``.

    ``c`` is the tail of the first column (the image of the origin).
    ``V`` is re-orthogonalized when it is within ``ORTHOGONAL_TOL`` of
    O(d); larger deviations raise instead of being silently repaired.
    """
    R = _as_square(R)
    if R.shape[0] < 2 or not np.all(np.isfinite(R)):
        raise ValidationError("factor needs a finite (d+1)x(d+1) matrix, d >= 1")
    c = R[1:, 0].copy()
    H = metric(R.shape[0] - 1)
    Rc = translation_matrix(c)
    M = H @ Rc.T @ H @ R
    off = max(abs(M[0, 0] - 1.0), np.max(np.abs(M[0, 1:])), np.max(np.abs(M[1:, 0])))
    if off > FACTOR_TOL:
        raise ValidationError(
            f"not H-unitary: residual {off:.3g} outside the rotation block")
    V = M[1:, 1:]
    if not is_orthogonal(V, ORTHOGONAL_TOL):
        raise ValidationError("rotation block is not orthogonal")
    return c, nearest_orthogonal(V)


def reconstruct(c, V):
    """``translation_matrix(c) @ rotation_matrix(V)``."""
    return translation_matrix(c) @ rotation_matrix(V)


def reproject(R):
    """Snap a slightly drifted H-unitary matrix back onto the group."""
    return reconstruct(*factor(R))


def random_orthogonal(d, rng):
    """Haar-distributed element of O(d) via QR with the sign fix."""
    A = rng.standard_normal((d, d))
    Q, T = np.linalg.qr(A)
    return Q * np.where(np.diag(T) < 0, -1.0, 1.0)


def random_hunitary(d, rng):
    """``R_b @ R_U`` with ``b ~ N(0, I_d)`` and ``U`` Haar on O(d)."""
    if d < 1:
        raise ValidationError("dimension must be >= 1")
    b = rng.standard_normal(d)
    U = random_orthogonal(d, rng)
    return translation_matrix(b) @ rotation_matrix(U)
