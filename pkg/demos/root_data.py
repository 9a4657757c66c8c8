"""
Root data of the Hermitian markings
===================================

Builds the marked parabolic for a few Hermitian symmetric spaces and prints
the cascade of strongly orthogonal roots, lambda and the polytope vertices.
"""

# %%
from hermsym.lie import build_marked_parabolic, root_system, weyl_dimension

for key in [("A", 1, 1), ("A", 3, 2), ("A", 4, 2), ("B", 3, 1), ("D", 4, 1), ("C", 3, 3)]:
    par = build_marked_parabolic(*key)
    print(par.describe(), " r =", par.r, " n =", par.n)
    print("  gammas :", par.gammas)
    print("  lambda :", par.lam)

# %%
# the vertices of the moment simplex, lambda + gamma_1 + ... + gamma_j
par = build_marked_parabolic("A", 3, 2)
for j, v in enumerate(par.lambda_vertices(1)):
    print(j, v)

# %%
# Weyl dimensions of multiples of the marked fundamental weight (Gr(2,4))
rs = root_system("A", 3)
print([weyl_dimension(rs.positive_roots, rs.fundamental_weight(2) * k) for k in range(1, 7)])

# %%
# B3 marked at node 3 is not Hermitian
try:
    build_marked_parabolic("B", 3, 3)
except ValueError as err:
    print("rejected:", err)
