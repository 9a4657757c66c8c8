"""
Sections, valuations and the Okounkov body
==========================================

Builds the level-one sections of Gr(2,4) from determinants, extracts the
highest weight vectors, and checks that the valuations span the moment
simplex.
"""

# %%
from hermsym.jordan import parse_model
from hermsym.okounkov import (
    build_section_space,
    highest_weight_vector,
    make_chart,
    okounkov_pipeline,
    resolve_convention,
    trivialize_fk,
    valuation,
)

m = parse_model("rect:2,2")
chart = make_chart(m)
names = [f"z{i + 1}" for i in range(chart.n)]
space = build_section_space(m, 1)
print("dim H^0(L) =", space.dimension)
print("f_2 =", trivialize_fk(m, 2).format(names))

# %%
print("raising convention:", resolve_convention(m))
for mm in [(0, 0), (1, 0), (1, 1)]:
    s = highest_weight_vector(space, mm)
    print(mm, s.format(names), valuation(s))

# %%
data = okounkov_pipeline(m, levels=(2, 3))
print("generators:", data.generators)
print("body vertices:", data.body_vertices)
for c in data.checks:
    print(f"[{c.status}] {c.name}: {c.detail}")
