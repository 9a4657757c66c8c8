"""
The moment map and its polytope
===============================

Evaluates the moment map on charts, on normal forms and on general pairs,
and reads off the point of the moment polytope.
"""

# %%
import numpy as np

from hermsym.jordan import parse_model
from hermsym.moment import (
    PairPoint,
    moment_chart,
    moment_general,
    moment_polytope,
    moment_spectral,
    moment_to_weight,
    normal_form_point,
    same_fibre,
)
from hermsym.structure import spectral_decomposition

m = parse_model("rect:2,2")
par = m.parabolic()
rng = np.random.default_rng(2)
x = rng.normal(size=4) + 1j * rng.normal(size=4)
a = moment_chart(m, x)
b = moment_spectral(m, spectral_decomposition(m, x))
print("chart vs spectral:", np.linalg.norm(a.operator - b.operator, 2))
print("anti-Hermitian defect:", a.anti_hermitian_defect)

# %%
w = moment_to_weight(a, par)
print("nu =", np.round(w.nu, 6), " weight =", np.round(w.coords, 6), " inside:", w.in_polytope)
print("vertices:", ", ".join(str(v) for v in moment_polytope(par, 1).vertices))

# %%
# a point off the chart: the class of (x, a) with B(x, a) singular
e = m.unit(0, 0)
pt = PairPoint(e, m.bar(e))
print(np.round(-1j * moment_general(m, pt).operator, 6).real)

# %%
# two normal forms in one fibre: phase-rotated tripotent, same sigma
p1 = normal_form_point(m, e, 2 * m.unit(1, 1))
p2 = normal_form_point(m, 1j * e, 2 * m.unit(1, 1))
print(same_fibre(m, p1, p2), np.linalg.norm(moment_general(m, p1).operator - moment_general(m, p2).operator))
