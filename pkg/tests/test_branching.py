from itertools import product
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hermsym.branching import (
    decompose,
    full_dimension,
    integral_points,
    is_multiplicity_free,
    is_staircase,
    ktype_dimension,
    staircase_decomposition,
    staircase_vectors,
)
from hermsym.jordan import parse_model
from hermsym.lie import build_marked_parabolic
from hermsym.suites import k_max

# Totals from closed forms that do not go through root systems:
# hook-content for Grassmannians, harmonic polynomials on the quadric.
FROZEN_TOTALS = {
    "rect:1,1": [k + 1 for k in range(1, 21)],
    "rect:1,2": [3, 6, 10, 15, 21, 28, 36, 45, 55, 66],
    "rect:2,2": [6, 20, 50, 105, 196, 336],
    "rect:2,3": [10, 50, 175, 490],
    "spin:3": [5, 14, 30],
    "spin:4": [6, 20, 50],
    "spin:5": [7, 27, 77],
    "spin:6": [8, 35, 112],
}


def hook_content(p, q, k):
    # number of SSYT of the p x k rectangle with entries in 1..p+q
    num = den = 1
    for i in range(p):
        for j in range(k):
            num *= p + q + j - i
            den *= (p - i) + (k - j) - 1
    return num // den


def quadric(n, k):
    # homogeneous polynomials of degree k on C^(n+2) modulo the quadric
    return comb(n + 1 + k, k) - comb(n - 1 + k, k - 2) if k >= 2 else comb(n + 1 + k, k)


def test_frozen_totals_match_closed_forms():
    for spec, totals in FROZEN_TOTALS.items():
        kind, args = spec.split(":")
        for k, t in enumerate(totals, start=1):
            if kind == "rect":
                p, q = map(int, args.split(","))
                assert hook_content(p, q, k) == t
            else:
                assert quadric(int(args), k) == t


@pytest.mark.parametrize("spec", sorted(FROZEN_TOTALS))
def test_dimension_identity(spec):
    model = parse_model(spec)
    par = model.parabolic()
    for k, expected in enumerate(FROZEN_TOTALS[spec][: k_max(model)], start=1):
        table = decompose(par, k)
        assert table.expected_total == expected == full_dimension(par, k)
        assert table.total == expected and table.ok
        assert len(table) == comb(k + par.r, par.r)
        assert is_multiplicity_free(table)


def test_integral_points_examples():
    assert integral_points(1, 2) == [(0, 0), (1, 0), (1, 1)]
    assert integral_points(2, 1) == [(0,), (1,), (2,)]
    assert len(integral_points(2, 2)) == 6
    with pytest.raises(ValueError):
        integral_points(-1, 2)


@given(st.integers(0, 5), st.integers(1, 4))
def test_integral_points_exhaustive(k, r):
    brute = [m for m in product(range(k + 1), repeat=r) if all(a >= b for a, b in zip(m, m[1:]))]
    assert integral_points(k, r) == sorted(brute)
    assert len(brute) == comb(k + r, r)


def test_ktype_dimension_examples():
    p1 = build_marked_parabolic("A", 1, 1)
    assert [ktype_dimension(p1, 4, (m,)) for m in range(5)] == [1] * 5
    gr = build_marked_parabolic("A", 3, 2)
    assert [ktype_dimension(gr, 1, m) for m in integral_points(1, 2)] == [1, 4, 1]
    assert ktype_dimension(gr, 2, (2, 0)) == 9
    with pytest.raises(ValueError):
        ktype_dimension(gr, 1, (0, 1))
    with pytest.raises(ValueError):
        ktype_dimension(gr, 1, (2, 0))


def test_decompose_examples():
    p1 = build_marked_parabolic("A", 1, 1)
    for k in range(1, 6):
        table = decompose(p1, k)
        assert len(table) == k + 1 and table.total == k + 1
    gr = build_marked_parabolic("A", 3, 2)
    assert [e.dimension for e in decompose(gr, 1).entries] == [1, 4, 1]
    assert decompose(gr, 2).total == 20
    with pytest.raises(ValueError):
        decompose(gr, 0)


def test_threaded_decompose_matches_serial():
    par = build_marked_parabolic("A", 4, 2)
    assert decompose(par, 3, workers=4) == decompose(par, 3, workers=1)


@given(st.integers(1, 6), st.integers(1, 4), st.data())
def test_staircase_factorization(k, r, data):
    m = data.draw(st.sampled_from(integral_points(k, r)))
    parts = staircase_decomposition(m, k)
    assert len(parts) == k
    assert all(p in staircase_vectors(r) for p in parts)
    assert tuple(map(sum, zip(*parts))) == m
    # nonincreasing parts make the decomposition unique
    assert all(a >= b for a, b in zip(parts, parts[1:]))


def test_staircase_rejects_bad_vectors():
    assert not is_staircase((0, 1), 2)
    with pytest.raises(ValueError):
        staircase_decomposition((3, 0), 2)


@pytest.mark.parametrize("k,r", [(1, 1), (2, 2), (3, 3), (4, 2)])
def test_monotone_inclusion(k, r):
    assert set(integral_points(k, r)) <= set(integral_points(k + 1, r))
