"""
K-types of the sections of L^k
==============================
"""

# %%
from hermsym.branching import decompose, is_multiplicity_free
from hermsym.jordan import parse_model

par = parse_model("rect:2,2").parabolic()
table = decompose(par, 2)
for e in table.entries:
    print(e.m, e.weight, e.dimension)
print("total", table.total, "expected", table.expected_total, "multiplicity free", is_multiplicity_free(table))

# %%
# totals for the quadric spin:5 against the harmonic polynomial count
from math import comb

par = parse_model("spin:5").parabolic()
for k in range(1, 4):
    print(k, decompose(par, k).total, comb(6 + k, k) - comb(4 + k, k - 2) if k > 1 else comb(6 + k, k))
