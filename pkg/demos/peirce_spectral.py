"""
Tripotents, Peirce spaces and spectral decomposition
====================================================
"""

# %%
import numpy as np

from hermsym.jordan import parse_model
from hermsym.structure import (
    jordan_algebra_det,
    make_frame,
    rank,
    rank_condition_check,
    spectral_decomposition,
)

m = parse_model("rect:2,3")
rng = np.random.default_rng(1)
x = rng.normal(size=m.n) + 1j * rng.normal(size=m.n)
sd = spectral_decomposition(m, x)
print("sigmas:", np.round(sd.sigmas, 4))
print("reconstruction error:", np.linalg.norm(sd.reconstruct(m.n) - x))

# %%
# singular values equal to each other are merged into one tripotent
e1, e2 = m.frame()
print(spectral_decomposition(m, e1 + e2).sigmas)

# %%
# joint Peirce spaces of the standard frame and their dimensions
frame = make_frame(m, m.frame(exact_entries=True))
for (i, j), p in frame.joint.items():
    print((i, j), int(sum(p[k, k].re for k in range(m.n))))

# %%
# Delta_c(x) vanishes for every rank-k tripotent c exactly when k > rank x
y = 2 * e1
print("rank", rank(m, y), [rank_condition_check(m, y, k) for k in (1, 2)])
print("Delta_e1(e1 + e2) =", jordan_algebra_det(m, e1, e1 + e2))
