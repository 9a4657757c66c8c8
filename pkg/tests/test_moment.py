from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermsym.jordan import RectModel, SpinModel
from hermsym.lie import Weight, build_marked_parabolic
from hermsym.moment import (
    PairPoint,
    chart_point,
    gamma_operator,
    gamma_operator_bergman,
    moment_chart,
    moment_general,
    moment_normal_form,
    moment_polytope,
    moment_spectral,
    moment_to_weight,
    normal_form_point,
    same_fibre,
)
from hermsym.structure import SpectralData, spectral_decomposition
from hermsym.suites import fibre_pair, random_element, random_normal_form

P11 = RectModel(1, 1)
R22 = RectModel(2, 2)
MODELS = [RectModel(1, 1), RectModel(2, 2), RectModel(2, 3), SpinModel(3), SpinModel(4), SpinModel(5)]


def norm(a):
    return float(np.linalg.norm(a, 2))


@pytest.mark.parametrize("model", MODELS, ids=str)
def test_moment_at_origin(model):
    value = moment_chart(model, np.zeros(model.n))
    assert np.allclose(value.operator, 1j * np.eye(model.n))
    assert np.allclose(moment_spectral(model, SpectralData((), ())).operator, 1j * np.eye(model.n))
    w = moment_to_weight(value, model.parabolic())
    assert np.allclose(w.coords, model.parabolic().lam.as_floats())


def test_scalar_moment_vanishes_at_one():
    value = moment_chart(P11, np.array([1.0]))
    assert norm(value.operator) < 1e-14
    spectral = moment_spectral(P11, SpectralData((1.0,), (np.array([1.0 + 0j]),)))
    assert norm(spectral.operator) < 1e-14
    par = P11.parabolic()
    w = moment_to_weight(value, par)
    expected = par.lam + Weight(par.gammas[0]) * Fraction(1, 2)
    assert np.allclose(w.coords, expected.as_floats())
    # the vanishing is consistent only because gamma_1 = -2 lambda in A1
    assert Weight(par.gammas[0]) == par.lam * -2


def test_spectral_substitution_sigma_three():
    e1 = R22.unit(0, 0)
    value = moment_spectral(R22, SpectralData((3.0,), (e1,)))
    expected = 1j * (np.eye(4) - 0.9 * R22.D(e1, R22.bar(e1)))
    assert np.allclose(value.operator, expected)


def test_large_sigma_reaches_last_vertex():
    for model in (R22, RectModel(2, 3), SpinModel(5)):
        par = model.parabolic()
        x = 1e4 * sum(model.frame())
        w = moment_to_weight(moment_chart(model, x), par)
        assert np.allclose(w.coords, par.lambda_vertices(1)[-1].as_floats(), atol=1e-6)
        nus = [moment_to_weight(moment_chart(model, s * model.frame()[0]), par).nu[0] for s in (0.5, 1, 2, 4)]
        assert nus == sorted(nus)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_gamma_on_chart_and_normal_forms(model, seed):
    rng = np.random.default_rng(seed)
    x = random_element(model, rng)
    g = gamma_operator(model, x, np.zeros(model.n))
    assert np.allclose(g, model.bergman(x, -model.bar(x)))
    pt = random_normal_form(model, rng)
    g = gamma_operator(model, pt.x, pt.a)
    assert np.allclose(g, model.bergman(pt.z, -model.bar(pt.z)), atol=1e-8 * max(1, norm(g)))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_gamma_positive_definite(seed):
    rng = np.random.default_rng(seed)
    x, a = random_element(R22, rng), random_element(R22, rng, 0.5)
    g = gamma_operator(R22, x, a)
    assert np.allclose(g, g.conj().T, atol=1e-8 * norm(g))
    assert np.linalg.eigvalsh((g + g.conj().T) / 2).min() > 0
    if R22.is_quasi_invertible(x, a):
        assert np.allclose(g, gamma_operator_bergman(R22, x, a), atol=1e-7 * norm(g))


def test_general_reduces_to_chart():
    rng = np.random.default_rng(11)
    for model in MODELS:
        x = random_element(model, rng)
        assert np.allclose(moment_general(model, chart_point(model, x)).operator, moment_chart(model, x).operator)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_formulas_agree(model, seed):
    rng = np.random.default_rng(seed)
    x = random_element(model, rng, rng.uniform(0.1, 3))
    m1 = moment_chart(model, x)
    m2 = moment_spectral(model, spectral_decomposition(model, x))
    assert norm(m1.operator - m2.operator) < 1e-9
    assert m1.anti_hermitian_defect < 1e-10
    pt = random_normal_form(model, rng)
    m3, m4 = moment_general(model, pt), moment_normal_form(model, pt)
    assert norm(m3.operator - m4.operator) < 1e-9
    w = moment_to_weight(m3, model.parabolic())
    assert w.in_polytope and all(a >= b for a, b in zip(w.nu, w.nu[1:]))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_representative_independence(model, seed):
    rng = np.random.default_rng(seed)
    x = random_element(model, rng)
    a, b = random_element(model, rng, 0.4), random_element(model, rng, 0.4)
    if not model.is_quasi_invertible(x, a - b):
        return
    other = PairPoint(model.quasi_inverse(x, a - b), b)
    assert norm(moment_general(model, PairPoint(x, a)).operator - moment_general(model, other).operator) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_equivariance(model, seed):
    rng = np.random.default_rng(seed)
    h = model.random_automorphism(rng)
    x = random_element(model, rng)
    lhs = moment_chart(model, h @ x).operator
    rhs = h @ moment_chart(model, x).operator @ np.linalg.inv(h)
    assert norm(lhs - rhs) < 1e-9


def test_image_form_on_spectral_frame():
    rng = np.random.default_rng(4)
    for model in MODELS:
        x = random_element(model, rng)
        value = moment_chart(model, x)
        nu = value.nu()
        assert np.all((nu >= 0) & (nu <= 1))
        op = np.eye(model.n, dtype=complex)
        for v, c in zip(nu, value.frame):
            op = op - v * model.D(c, model.bar(c))
        assert np.allclose(value.operator, 1j * op, atol=1e-9)


def test_polytope_examples():
    p1 = moment_polytope(build_marked_parabolic("A", 1, 1), 1)
    lam, g = p1.lam, Weight(p1.gammas[0])
    assert p1.vertices == (lam, lam + g)
    gr = build_marked_parabolic("A", 3, 2)
    poly = moment_polytope(gr, 1)
    g1, g2 = (Weight(v) for v in gr.gammas)
    assert poly.vertices == (gr.lam, gr.lam + g1, gr.lam + g1 + g2)
    assert moment_polytope(gr, 2).vertices == tuple(v * 2 for v in poly.vertices)
    assert poly.contains([Fraction(1, 2), Fraction(1, 3)])
    assert not poly.contains([Fraction(1, 3), Fraction(1, 2)])
    with pytest.raises(ValueError):
        moment_polytope(gr, 0)


def test_same_fibre_examples():
    e11, e22 = R22.unit(0, 0), R22.unit(1, 1)
    p = normal_form_point(R22, e11, 2 * e22)
    assert same_fibre(R22, p, p)
    rotated = normal_form_point(R22, 1j * e11, 2 * e22)
    assert same_fibre(R22, p, rotated)
    assert norm(moment_general(R22, p).operator - moment_general(R22, rotated).operator) < 1e-10
    other = normal_form_point(R22, e11, 3 * e22)
    assert not same_fibre(R22, p, other)
    assert norm(moment_general(R22, p).operator - moment_general(R22, other).operator) > 1e-3
    with pytest.raises(ValueError):
        same_fibre(R22, chart_point(R22, e11), p)


def test_normal_form_validation():
    with pytest.raises(ValueError):
        normal_form_point(R22, 2 * R22.unit(0, 0), np.zeros(4))
    with pytest.raises(ValueError):
        normal_form_point(R22, R22.unit(0, 0), R22.unit(0, 1))


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_fibre_coherence(model, seed):
    rng = np.random.default_rng(seed)
    p1, p2 = fibre_pair(model, rng, True)
    assert same_fibre(model, p1, p2)
    assert norm(moment_general(model, p1).operator - moment_general(model, p2).operator) <= 1e-10
    q1, q2 = fibre_pair(model, rng, False)
    assert not same_fibre(model, q1, q2)
    assert norm(moment_general(model, q1).operator - moment_general(model, q2).operator) >= 1e-6
