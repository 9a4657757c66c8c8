"""
Jordan pair calculus in the matrix and spin models
==================================================

Triple products, Bergman operators, quasi-inverses and the generic
determinant, all over exact Gaussian rationals.
"""

# %%
import numpy as np

from hermsym import exact
from hermsym.jordan import parse_model

m = parse_model("rect:1,1")
two, three = exact.to_exact([2]), exact.to_exact([3])
print("{2,3,3} =", m.triple_product(two, three, three)[0])
print("2^3 =", m.quasi_inverse(two, three)[0])

# %%
# rect:2,3 is 2 x 3 matrices; the structure constant is p + q
g = parse_model("rect:2,3")
e = g.frame(exact_entries=True)[0]
print("tau(e, e-bar) =", g.trace_form(e, g.bar(e)), " p =", g.structure_constant)

# %%
# det B(x, y) = Delta(x, y)^p on random exact data
from hermsym.suites import exact_element

rng = np.random.default_rng(0)
x, y = exact_element(g, rng), exact_element(g, rng)
print(exact.det(g.bergman(x, y)) == g.generic_det(x, y) ** g.structure_constant)

# %%
# the determinant cocycle Delta(u,v) Delta(u^v, w) = Delta(u, v+w)
u, v, w = (exact_element(g, rng) for _ in range(3))
lhs = g.generic_det(u, v) * g.generic_det(g.quasi_inverse(u, v), w)
print(lhs, "==", g.generic_det(u, v + w))

# %%
s = parse_model("spin:5")
print(s, "rank", s.rank, "p", s.structure_constant, "frame", [list(map(int, np.real(c))) for c in s.frame()])
