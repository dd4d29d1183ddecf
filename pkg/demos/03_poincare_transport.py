"""The same isometries seen in the Poincare ball."""

# %%
import numpy as np

from hyperprocrustes import isometry
from hyperprocrustes.lorentz import lift, loid_distance
from hyperprocrustes.poincare import (gyration, mobius_add, poincare_distance,
                                      poincare_rotate, poincare_translate,
                                      to_poincare)

rng = np.random.default_rng(2)

# %% stereographic projection keeps distances
x, x2 = lift(rng.standard_normal((2, 2)))
y, y2 = to_poincare(x), to_poincare(x2)
print(loid_distance(x, x2), poincare_distance(y, y2))

# %% a hyperboloid translation becomes left Mobius addition
b = np.array([0.4, -0.9])
lhs = to_poincare(isometry.apply(isometry.translation_matrix(b), x))
print(lhs, poincare_translate(to_poincare(lift(b)), y))

# %% a rotation stays a rotation
U = isometry.random_orthogonal(2, rng)
print(to_poincare(isometry.apply(isometry.rotation_matrix(U), x)), poincare_rotate(U, y))

# %% Mobius addition does not commute; the gyration measures by how much
u, v = np.array([0.5, 0.0]), np.array([0.0, 0.5])
print("u+v:", mobius_add(u, v), " v+u:", mobius_add(v, u))
print("gyr[u, v](v + u):", gyration(u, v, mobius_add(v, u)))
