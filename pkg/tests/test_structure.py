import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermsym import exact
from hermsym.jordan import RectModel, SpinModel
from hermsym.lie import build_marked_parabolic
from hermsym.structure import (
    frame_from_parabolic,
    is_tripotent,
    jordan_algebra_det,
    make_frame,
    make_tripotent,
    rank,
    rank_condition_check,
    spectral_decomposition,
)

P11 = RectModel(1, 1)
R22 = RectModel(2, 2)
MODELS = [RectModel(1, 1), RectModel(2, 2), RectModel(2, 3), RectModel(1, 3), SpinModel(3), SpinModel(4), SpinModel(6)]


def test_is_tripotent_examples():
    assert is_tripotent(P11, np.array([1.0 + 0j]))
    assert not is_tripotent(P11, np.array([2.0 + 0j]))
    rng = np.random.default_rng(3)
    for _ in range(10):
        u, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        assert is_tripotent(R22, R22.from_matrix(u))


def test_spectral_examples():
    e1, e2 = R22.frame()
    assert len(spectral_decomposition(R22, np.zeros(4))) == 0
    sd = spectral_decomposition(R22, 3 * e1 + e2)
    assert sd.sigmas == pytest.approx((3, 1))
    assert np.allclose(sd.tripotents[0], e1) and np.allclose(sd.tripotents[1], e2)
    merged = spectral_decomposition(R22, e1 + e2)
    assert merged.sigmas == pytest.approx((1,))
    assert np.allclose(merged.tripotents[0], e1 + e2)


def test_rank_examples():
    e1, e2 = R22.frame()
    assert rank(R22, np.zeros(4)) == 0
    assert rank(R22, e1 + e2) == 2
    for model in MODELS:
        for e in model.frame():
            assert rank(model, e) == 1
        for e in model.frame(exact_entries=True):
            assert rank(model, e) == 1


def test_jordan_algebra_det_examples():
    assert jordan_algebra_det(P11, np.array([1.0]), np.array([0.7])) == pytest.approx(0.7)
    e = R22.unit(0, 0, True)
    assert jordan_algebra_det(R22, e, e) == 1
    z = exact.to_exact(np.array([2 + 1j, 3, -1, 5j]))
    assert jordan_algebra_det(R22, e, z) == z[0]


def test_jordan_algebra_det_vanishes_off_peirce_two():
    rng = np.random.default_rng(5)
    for model in MODELS:
        t = make_tripotent(model, model.frame()[0])
        for _ in range(5):
            w = rng.normal(size=model.n) + 1j * rng.normal(size=model.n)
            w = (t.P(1) + t.P(0)) @ w
            assert abs(jordan_algebra_det(model, t, w)) < 1e-10


def test_rank_condition_examples():
    e1, e2 = R22.frame()
    assert not rank_condition_check(R22, e1 + e2, 1)
    assert jordan_algebra_det(R22, e1, e1 + e2) == pytest.approx(1)
    assert rank_condition_check(R22, e1, 2)
    assert rank_condition_check(R22, np.zeros(4), 1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1), st.integers(0, 2))
def test_rank_condition_matches_rank(model, seed, drop):
    rng = np.random.default_rng(seed)
    pieces = model.primitive_pieces(rng.normal(size=model.n) + 1j * rng.normal(size=model.n))
    keep = max(0, model.rank - drop)
    x = sum((s * c for s, c in pieces[:keep]), np.zeros(model.n, complex))
    assert rank(model, x) == keep
    for k in range(1, model.rank + 1):
        assert rank_condition_check(model, x, k, rng=rng) == (k > keep)


def test_frame_from_parabolic():
    frame = frame_from_parabolic(R22)
    assert [list(e) for e in frame.elements] == [[1, 0, 0, 0], [0, 0, 0, 1]]
    assert [list(e) for e in frame_from_parabolic(P11).elements] == [[1]]
    for model in MODELS:
        frame_from_parabolic(model)
    with pytest.raises(ValueError):
        frame_from_parabolic(R22, build_marked_parabolic("A", 3, 1))


def test_gamma_trace_identity_instance():
    e1 = R22.unit(0, 0, True)
    t = R22.D(e1, R22.bar(e1))
    assert R22.trace_form(t @ e1, R22.bar(e1)) / R22.structure_constant == 2


@pytest.mark.parametrize("model", MODELS, ids=str)
def test_joint_peirce_decomposition(model):
    frame = make_frame(model, model.frame(exact_entries=True))
    total = sum(frame.joint.values())
    assert (total == exact.identity(model.n, True)).all()
    for ell, t in enumerate(frame.tripotents, start=1):
        for (i, j), p in frame.joint.items():
            assert (t.D @ p == (int(i == ell) + int(j == ell)) * p).all()
    for t in frame.tripotents:
        p2, p1, p0 = t.projections
        assert (p2 + p1 + p0 == exact.identity(model.n, True)).all()
        assert (p2 @ p1 == 0).all() and (p1 @ p1 == p1).all()
        assert model.trace_form(t.element, model.bar(t.element)) == 2 + exact.rank(p1)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_spectral_reconstruction_and_uniqueness(model, seed):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=model.n) + 1j * rng.normal(size=model.n)
    sd = spectral_decomposition(model, x)
    assert np.linalg.norm(sd.reconstruct(model.n) - x) <= 1e-10 * np.linalg.norm(x)
    assert all(a > b for a, b in zip(sd.sigmas, sd.sigmas[1:]))
    for c in sd.tripotents:
        assert is_tripotent(model, c, tol=1e-9)
    again = spectral_decomposition(model, x)
    assert again.sigmas == sd.sigmas
    for c, d in zip(sd.tripotents, again.tripotents):
        assert np.allclose(make_tripotent(model, c, False).P(2), make_tripotent(model, d, False).P(2))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(MODELS), st.integers(0, 2**32 - 1))
def test_peirce_rules_on_random_data(model, seed):
    rng = np.random.default_rng(seed)
    t = make_tripotent(model, model.random_automorphism(rng) @ model.frame()[0])
    vec = lambda: rng.normal(size=model.n) + 1j * rng.normal(size=model.n)  # noqa: E731
    for i in range(3):
        for j in range(3):
            for k in range(3):
                a, b, c = t.P(i) @ vec(), t.P_dual(j) @ vec(), t.P(k) @ vec()
                out = model.triple_product(a, b, c)
                target = i - j + k
                expected = t.P(target) @ out if 0 <= target <= 2 else np.zeros(model.n)
                assert np.allclose(out, expected, atol=1e-9)
