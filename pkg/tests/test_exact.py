from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hermsym import exact
from hermsym.exact import GaussQ

small = st.integers(-6, 6)
gauss = st.builds(lambda a, b, c: GaussQ(Fraction(a, c), b), small, small, st.integers(1, 4))


@given(gauss, gauss, gauss)
def test_gaussq_field_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    if b:
        assert (a / b) * b == a


@given(gauss, gauss)
def test_gaussq_matches_complex(a, b):
    assert complex(a * b) == pytest.approx(complex(a) * complex(b))
    assert complex(a.conjugate()) == complex(a).conjugate()
    assert a.norm() == (a * a.conjugate()).re


def test_gaussq_mixes_with_fraction_and_int():
    a = GaussQ(Fraction(1, 2), 3)
    assert a * Fraction(2, 3) == GaussQ(Fraction(1, 3), 2)
    assert 1 - a == GaussQ(Fraction(1, 2), -3)
    assert GaussQ(2) == 2
    assert hash(GaussQ(Fraction(1, 2))) == hash(Fraction(1, 2))
    assert str(GaussQ(1, -2)) == "(1-2i)"


int_matrix = st.lists(st.lists(st.integers(-5, 5), min_size=4, max_size=4), min_size=3, max_size=5)


@settings(max_examples=60)
@given(int_matrix)
def test_bareiss_rank_against_sympy(rows):
    ech, piv = exact.bareiss_echelon(rows)
    assert len(piv) == sympy.Matrix(rows).rank()
    assert all(isinstance(v, int) for r in ech for v in r)


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_against_sympy(rows):
    expected = sympy.Matrix(rows).det()
    assert exact.det(rows) == expected
    assert exact.det_division_free(rows) == expected


@settings(max_examples=40)
@given(int_matrix)
def test_nullspace_is_kernel(rows):
    basis = exact.nullspace(rows)
    assert len(basis) == 4 - sympy.Matrix(rows).rank()
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


def test_solve_and_inverse_gaussian():
    m = exact.to_exact(np.array([[1 + 1j, 2], [0, 3 - 1j]]))
    inv = exact.inv(m)
    prod = m @ inv
    assert all(prod[i, j] == (1 if i == j else 0) for i in range(2) for j in range(2))
    x = exact.solve(m, exact.to_exact([1, 1j]))
    assert np.allclose(exact.to_complex(m @ x), [1, 1j])


def test_singular_solve_raises():
    with pytest.raises(ZeroDivisionError):
        exact.solve([[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]], [Fraction(1), Fraction(0)])


def test_clear_denominators():
    assert exact.clear_denominators([Fraction(1, 2), Fraction(-3, 4), 0]) == [2, -3, 0]
    assert exact.clear_denominators([6, 9]) == [2, 3]
