"""Tripotents, Peirce spaces, spectral data and the frame attached to a marking."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import exact
from .jordan import JordanModel, _is_object
from .lie import MarkedParabolic, dot

MERGE_RTOL = 1e-8
RANK_RTOL = 1e-10
# z below this norm counts as zero when building adapted frames
ZERO_ATOL = 1e-12


def _half(ex: bool):
    return Fraction(1, 2) if ex else 0.5


def _allclose(a, b, tol: float) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    if a.dtype == object or b.dtype == object:
        return all(u == v for u, v in zip(a.reshape(-1), b.reshape(-1)))
    return bool(np.max(np.abs(a - b), initial=0.0) <= tol)


def peirce_from_D(d: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(P2, P1, P0) by interpolation on the spectrum {0, 1, 2} of D(e, e-bar)."""
    ex = d.dtype == object
    eye = exact.identity(d.shape[0], ex)
    h = _half(ex)
    p2 = h * (d @ (d - eye))
    p1 = d @ (2 * eye - d)
    p0 = h * ((d - eye) @ (d - 2 * eye))
    return p2, p1, p0


def is_tripotent(model: JordanModel, x, tol: float = 1e-12) -> bool:
    x = np.asarray(x)
    return _allclose(model.Q(x) @ model.bar(x), x, tol * max(1.0, float(np.max(np.abs(exact.to_complex(x)), initial=0.0))))


@dataclass(frozen=True, eq=False)
class Tripotent:
    model: JordanModel
    element: np.ndarray
    projections: tuple[np.ndarray, np.ndarray, np.ndarray] = field(repr=False)
    dual_projections: tuple[np.ndarray, np.ndarray, np.ndarray] = field(repr=False)

    @property
    def D(self) -> np.ndarray:
        p2, p1, _ = self.projections
        return 2 * p2 + p1

    def P(self, k: int) -> np.ndarray:
        return self.projections[2 - k]

    def P_dual(self, k: int) -> np.ndarray:
        return self.dual_projections[2 - k]

    @property
    def rank(self) -> int:
        return rank(self.model, self.element)


def make_tripotent(model: JordanModel, e, check: bool = True) -> Tripotent:
    e = np.asarray(e)
    if check and not is_tripotent(model, e):
        raise ValueError("element is not a tripotent")
    eb = model.bar(e)
    return Tripotent(model, e, peirce_from_D(model.D(e, eb)), peirce_from_D(model.D_dual(eb, e)))


def joint_index_pairs(r: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(r + 1) for j in range(i, r + 1)]


def _joint(projs: Sequence[tuple], i: int, j: int, ex: bool, n: int) -> np.ndarray:
    out = exact.identity(n, ex)
    for ell, pr in enumerate(projs, start=1):
        ev = int(i == ell) + int(j == ell)
        out = out @ pr[2 - ev]
    return out


@dataclass(frozen=True, eq=False)
class Frame:
    model: JordanModel
    tripotents: tuple[Tripotent, ...]
    joint: dict = field(repr=False)
    joint_dual: dict = field(repr=False)

    @property
    def elements(self) -> list[np.ndarray]:
        return [t.element for t in self.tripotents]

    def __len__(self) -> int:
        return len(self.tripotents)


def make_frame(model: JordanModel, elements: Sequence, check: bool = True) -> Frame:
    trips = tuple(make_tripotent(model, e, check) for e in elements)
    ex = _is_object(*[t.element for t in trips])
    n, r = model.n, len(trips)
    if check:
        for a, b in itertools.combinations(trips, 2):
            if not _allclose(a.P(0) @ b.element, b.element, 1e-10):
                raise ValueError("frame tripotents are not orthogonal")
    joint, joint_dual = {}, {}
    for i in range(r + 1):
        for j in range(i, r + 1):
            joint[(i, j)] = _joint([t.projections for t in trips], i, j, ex, n)
            joint_dual[(i, j)] = _joint([t.dual_projections for t in trips], i, j, ex, n)
    return Frame(model, trips, joint, joint_dual)


@dataclass(frozen=True)
class SpectralData:
    sigmas: tuple[float, ...]
    tripotents: tuple[np.ndarray, ...] = field(compare=False)

    def __len__(self) -> int:
        return len(self.sigmas)

    def reconstruct(self, n: int) -> np.ndarray:
        out = np.zeros(n, dtype=complex)
        for s, c in zip(self.sigmas, self.tripotents):
            out = out + s * c
        return out


def spectral_decomposition(model: JordanModel, x) -> SpectralData:
    """x = sum sigma_j c_j with sigma strictly decreasing and c_j orthogonal tripotents.

    Primitive pieces whose values agree to a relative gap of 1e-8 are merged.
    """
    x = exact.to_complex(x) if _is_object(x) else np.asarray(x, dtype=complex)
    pieces = model.primitive_pieces(x)
    top = pieces[0][0] if pieces else 0.0
    if top == 0.0:
        return SpectralData((), ())
    pieces = [(s, c) for s, c in pieces if s > RANK_RTOL * top]
    groups: list[list[tuple[float, np.ndarray]]] = []
    for s, c in pieces:
        if groups and groups[-1][0][0] - s <= MERGE_RTOL * groups[-1][0][0]:
            groups[-1].append((s, c))
        else:
            groups.append([(s, c)])
    sigmas = tuple(float(np.mean([s for s, _ in g])) for g in groups)
    trips = tuple(sum(c for _, c in g) for g in groups)
    return SpectralData(sigmas, trips)


def rank(model: JordanModel, x) -> int:
    if _is_object(x):
        return model.exact_rank(x)
    pieces = model.primitive_pieces(np.asarray(x, dtype=complex))
    top = pieces[0][0]
    if top == 0.0:
        return 0
    return sum(1 for s, _ in pieces if s > RANK_RTOL * top)


def jordan_algebra_det(model: JordanModel, e, x):
    """Delta_e(x) = Delta(e - x, e-bar)."""
    e = e.element if isinstance(e, Tripotent) else np.asarray(e)
    return model.generic_det(e - np.asarray(x), model.bar(e))


def rank_k_tripotents(model: JordanModel, x, k: int, rng: np.random.Generator | None = None,
                      samples: int = 8) -> list[np.ndarray]:
    """The sampling family used by :func:`rank_condition_check`.

    Sums of k primitive pieces of x, k-subsets of the standard frame, and
    images of those subsets under random unitary automorphisms.
    """
    r = model.rank
    if k > r or k < 1:
        return []
    rng = np.random.default_rng(0) if rng is None else rng
    out = []
    pieces = [c for _, c in model.primitive_pieces(np.asarray(exact.to_complex(x) if _is_object(x) else x, dtype=complex))]
    for sub in itertools.combinations(range(r), k):
        out.append(sum(pieces[i] for i in sub))
    frame = model.frame()
    subsets = [sum(frame[i] for i in sub) for sub in itertools.combinations(range(r), k)]
    out.extend(subsets)
    for _ in range(samples):
        h = model.random_automorphism(rng)
        out.extend(h @ c for c in subsets)
    return out


def rank_condition_check(model: JordanModel, x, k: int, tol: float = 1e-9,
                         rng: np.random.Generator | None = None) -> bool:
    """Whether Delta_c(x) vanishes for every sampled rank-k tripotent c."""
    xv = exact.to_complex(x) if _is_object(x) else np.asarray(x, dtype=complex)
    scale = (1.0 + float(np.linalg.norm(xv))) ** model.rank
    return all(abs(jordan_algebra_det(model, c, xv)) <= tol * scale for c in rank_k_tripotents(model, xv, k, rng))


def check_compatible(model: JordanModel, parabolic: MarkedParabolic) -> None:
    own = model.parabolic()
    if (own.root_system.cartan_type, own.root_system.rank, own.marked_index) != (
        parabolic.root_system.cartan_type, parabolic.root_system.rank, parabolic.marked_index
    ):
        raise ValueError(f"{model.spec} realizes {own.describe()}, not {parabolic.describe()}")


def cartan_element(model: JordanModel, op: np.ndarray) -> tuple[Fraction, ...]:
    """For a diagonal operator T in the Levi Cartan, the vector h with alpha_l(T) = alpha_l . h.

    Raises if the diagonal is not a linear function of the coordinate roots.
    """
    roots = model.coordinate_roots()
    diag = [op[l, l] for l in range(model.n)]
    rows = [[Fraction(c) for c in a] + [_real_fraction(d)] for a, d in zip(roots, diag)]
    red, piv = exact._rref(rows, rhs_cols=1)
    for row in red[len(piv):]:
        if row[-1] != 0:
            raise ValueError("diagonal is not linear in the roots")
    h = [Fraction(0)] * len(roots[0])
    for i, p in enumerate(piv):
        h[p] = red[i][-1]
    return tuple(h)


def _real_fraction(v) -> Fraction:
    if isinstance(v, exact.GaussQ):
        if v.im != 0:
            raise ValueError("expected a real diagonal")
        return v.re
    return Fraction(v)


def frame_from_parabolic(model: JordanModel, parabolic: MarkedParabolic | None = None) -> Frame:
    """The model's frame with e_j attached to gamma_j, after validating that
    gamma_j(T) = (1/p) tau(T e_j, e_j-bar) on the Levi Cartan operators."""
    parabolic = model.parabolic() if parabolic is None else parabolic
    check_compatible(model, parabolic)
    frame = make_frame(model, model.frame(exact_entries=True))
    roots = model.coordinate_roots()
    p = model.structure_constant
    basis = model.basis(exact_entries=True)
    for j, (e, g) in enumerate(zip(frame.elements, parabolic.gammas)):
        idx = [k for k in range(model.n) if e[k] != 0]
        if len(idx) != 1 or roots[idx[0]] != tuple(g):
            raise ValueError(f"frame element {j} does not sit on gamma_{j + 1}")
    for u in basis:
        t = model.D(u, model.bar(u))
        h = cartan_element(model, t)
        for e, g in zip(frame.elements, parabolic.gammas):
            lhs = model.trace_form(t @ e, model.bar(e)) / p
            if lhs != dot(g, h):
                raise ValueError("trace-form description of the cascade fails")
    return frame


def adapted_frame(model: JordanModel, tripotent, z=None, rng: np.random.Generator | None = None
                  ) -> tuple[list[np.ndarray], list[float]]:
    """A full frame of primitive tripotents adapted to e + z (z in V_0(e)).

    Returns (frame elements, coefficients) with coefficient 1 on the pieces
    of e, sigma_j on the pieces of z and 0 on the completion.
    """
    rng = np.random.default_rng(12345) if rng is None else rng
    n, r = model.n, model.rank
    elems: list[np.ndarray] = []
    coefs: list[float] = []
    if tripotent is not None:
        e = np.asarray(tripotent, dtype=complex)
        if np.linalg.norm(e) > 0:
            for s, c in model.primitive_pieces(e):
                if s > 0.5:
                    elems.append(c)
                    coefs.append(1.0)
    if z is not None:
        zv = np.asarray(z, dtype=complex)
        pieces = model.primitive_pieces(zv)
        top = pieces[0][0]
        for s, c in pieces:
            if top > ZERO_ATOL and s > RANK_RTOL * top:
                elems.append(c)
                coefs.append(float(s))
    while len(elems) < r:
        total = sum(elems) if elems else np.zeros(n, complex)
        _, _, p0 = peirce_from_D(model.D(total, model.bar(total)))
        w = p0 @ (rng.normal(size=n) + 1j * rng.normal(size=n))
        elems.append(model.primitive_pieces(w)[0][1])
        coefs.append(0.0)
    return elems, coefs
