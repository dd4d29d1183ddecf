"""Gradient descent on the mean geodesic error, alone and after the closed form."""

# %%
import numpy as np

from hyperprocrustes.bench import synth_pair
from hyperprocrustes.descent import GdConfig, gd_align, refine
from hyperprocrustes.procrustes import align, normalized_discrepancy
from hyperprocrustes import isometry

rng = np.random.default_rng(3)
target, source, R_true = synth_pair(8, 2, 1e-2, rng)
print("ground truth error:", normalized_discrepancy(target, isometry.apply(R_true, source)))

# %% closed form, then descent started from it
est = align(target, source)
pol = refine(target, source, est.R_est)
print(f"closed form {est.residual:.3e} -> refined {pol.residual:.3e} "
      f"in {pol.iterations} steps")

# %% descent from the identity needs many more steps
gd = gd_align(target, source)
print(f"from identity: {gd.residual:.3e} after {gd.iterations} steps, "
      f"converged={gd.converged}")

# %% a fixed step without backtracking tends to stall or oscillate
lit = gd_align(target, source, GdConfig(backtrack=False))
print(f"fixed step: {lit.residual:.3e}, converged={lit.converged}")
print("last errors:", np.round(lit.history[-5:], 6))
