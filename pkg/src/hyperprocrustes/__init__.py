"""Procrustes analysis for point sets in hyperbolic space.

The hyperboloid model is the working representation: points are rows
of an ``(N, d + 1)`` array, isometries are H-unitary matrices.  ``align``
gives the closed-form estimate, ``refine`` polishes it by gradient
descent, and ``bench`` measures both under translation noise.
"""

from .errors import NumericalError, ValidationError
from .isometry import (apply, compose, factor, inverse, is_hunitary,
                       random_hunitary, rotation_matrix, translation_matrix)
from .lorentz import lift, loid_distance, lorentzian_inner, project
from .poincare import (from_poincare, gyration, mobius_add, poincare_distance,
                       poincare_rotate, poincare_translate, to_poincare)
from .procrustes import (AlignmentResult, align, center, centroid,
                         estimate_rotation, normalized_discrepancy)
from .descent import GdConfig, discrepancy_gradient_b, gd_align, refine

__version__ = "0.1.0"
