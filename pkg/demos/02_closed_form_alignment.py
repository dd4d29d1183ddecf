"""Recovering an unknown isometry from matched point sets in one shot."""

# %%
import numpy as np

from hyperprocrustes import isometry
from hyperprocrustes.lorentz import lift
from hyperprocrustes.procrustes import align, center

rng = np.random.default_rng(1)
d, n = 3, 10

# %% a hidden isometry relates the two sets exactly
R_true = isometry.random_hunitary(d, rng)
source = lift(rng.standard_normal((n, d)))
target = isometry.apply(R_true, source)

# %% centering moves each set so its projected mean is zero
Xc, m_t = center(target)
Yc, m_s = center(source)
print("projected means after centering:", Xc[:, 1:].mean(0), Yc[:, 1:].mean(0))

# %% the centered sets now differ by a pure rotation, found by an SVD
res = align(target, source)
print("residual:", res.residual)
print("max |R_est - R_true|:", np.abs(res.R_est - R_true).max())

# %% weights let some correspondences count more than others
w = rng.uniform(0.5, 2.0, n)
print("weighted residual:", align(target, source, w).residual)
