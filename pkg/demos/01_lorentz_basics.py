"""Points on the hyperboloid sheet, distances and the elementary isometries."""

# %%
import numpy as np

from hyperprocrustes import isometry
from hyperprocrustes.lorentz import lift, loid_distance, lorentzian_inner, project

rng = np.random.default_rng(0)

# %% lift a few Euclidean parameters onto the sheet [x, x] = -1
Z = rng.standard_normal((4, 2))
X = lift(Z)
print("[x, x] per row:", lorentzian_inner(X, X))
print("projection recovers the parameters:", np.allclose(project(X), Z))

# %% distances from the origin grow like asinh of the parameter norm
o = lift(np.zeros(2))
for z in (0.1, 1.0, 10.0, 1e3):
    print(f"|z|={z:g}  d(o, Q(z))={loid_distance(o, lift([z, 0.0])):.6f}  "
          f"asinh={np.arcsinh(z):.6f}")

# %% translations and rotations preserve all pairwise distances
R = isometry.translation_matrix([0.7, -1.2]) @ isometry.rotation_matrix(
    isometry.random_orthogonal(2, rng))
Y = isometry.apply(R, X)
print("H-unitary:", isometry.is_hunitary(R))
print("distance change:", abs(loid_distance(X[0], X[1]) - loid_distance(Y[0], Y[1])))

# %% every isometry splits into a translation after a rotation
c, V = isometry.factor(R)
print("translation part:", c)
print("round trip error:", np.abs(isometry.reconstruct(c, V) - R).max())
