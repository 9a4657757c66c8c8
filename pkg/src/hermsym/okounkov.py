"""Sections as polynomials on the big cell, the valuation and the Okounkov body.

A section of L^k restricted to the open chart V is a polynomial of degree at
most k*r in the coordinates z_1..z_n.  The coordinates are ordered by the
noncompact roots of the marking, strongly orthogonal cascade first, so that
z_1..z_r are the frame coordinates.  The monomial z^a has torus weight
k*lambda + sum a_j alpha_j.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from . import exact
from .branching import full_dimension, integral_points, staircase_vectors
from .checks import Check
from .jordan import JordanModel
from .lie import MarkedParabolic, Weight, simple_system
from .polynomial import ExponentPolynomial
from .structure import check_compatible

POSITIVE = "positive"
OPPOSITE = "opposite"
VACUOUS = "vacuous"


class OkounkovError(RuntimeError):
    """A verification step of the section/valuation pipeline failed."""


# -- orders and weights ------------------------------------------------------
def invlex_key(a: Sequence[int]) -> tuple[int, ...]:
    """Sort key for the inverse lexicographic order: compare at the largest differing index."""
    return tuple(reversed(tuple(a)))


def invlex_min(exponents) -> tuple[int, ...]:
    exps = [tuple(e) for e in exponents]
    if not exps:
        raise ValueError("invlex_min of an empty set")
    return min(exps, key=invlex_key)


def monomial_weight(parabolic: MarkedParabolic, k: int, a: Sequence[int]) -> Weight:
    w = parabolic.lam * k
    for aj, alpha in zip(a, parabolic.noncompact_roots):
        if aj:
            w = w + Weight(alpha) * aj
    return w


def valuation(s: ExponentPolynomial) -> tuple[int, ...]:
    if not s:
        raise ValueError("the zero section has no valuation")
    return invlex_min(s.support())


def is_weight_pure(parabolic: MarkedParabolic, k: int, s: ExponentPolynomial) -> bool:
    return len({monomial_weight(parabolic, k, a) for a in s.support()}) <= 1


# -- the chart ---------------------------------------------------------------
@dataclass(frozen=True)
class Chart:
    """Coordinates z_i on V ordered by the marking's noncompact roots."""

    model: JordanModel
    parabolic: MarkedParabolic
    to_model: tuple[int, ...]  # polynomial index -> model coordinate index

    @property
    def n(self) -> int:
        return len(self.to_model)

    def point(self) -> np.ndarray:
        """The generic point of V as an object array of coordinate polynomials."""
        out = np.empty(self.n, dtype=object)
        for i, j in enumerate(self.to_model):
            out[j] = ExponentPolynomial.variable(self.n, i)
        return out

    def names(self) -> list[str]:
        return [f"z[{r}]" for r in self.parabolic.noncompact_roots]


@lru_cache(maxsize=None)
def make_chart(model: JordanModel) -> Chart:
    parabolic = model.parabolic()
    roots = model.coordinate_roots()
    where = {tuple(r): j for j, r in enumerate(roots)}
    if len(where) != len(roots):
        raise ValueError("coordinate roots are not distinct")
    try:
        order = tuple(where[tuple(a)] for a in parabolic.noncompact_roots)
    except KeyError as err:
        raise ValueError(f"model coordinates do not match the noncompact roots: {err}") from None
    return Chart(model, parabolic, order)


def _dual_vector(values) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = Fraction(int(v))
    return out


def determinant_section(model: JordanModel, b: Sequence[int]) -> ExponentPolynomial:
    """x -> Delta(x, b) for an integer vector b of V' (model coordinates)."""
    chart = make_chart(model)
    value = model.generic_det(chart.point(), _dual_vector(b))
    if not isinstance(value, ExponentPolynomial):
        value = ExponentPolynomial.constant(chart.n, value)
    return value


def trivialize_fk(model: JordanModel, j: int) -> ExponentPolynomial:
    """Delta(x, -e_j-bar) with e_j the sum of the first j frame tripotents."""
    if not 0 <= j <= model.rank:
        raise ValueError(f"j must lie in 0..{model.rank}")
    e = np.zeros(model.n, dtype=int)
    for c in model.frame()[:j]:
        e = e + np.asarray(np.real(c), dtype=int)
    return determinant_section(model, -e)


# -- root derivations ----------------------------------------------------------
def levi_roots(parabolic: MarkedParabolic, convention: str) -> list[tuple[int, ...]]:
    """The simple roots of the raising set for a convention."""
    simple = simple_system(parabolic.compact_positive) if parabolic.compact_positive else []
    if convention == POSITIVE:
        return [tuple(a) for a in simple]
    if convention == OPPOSITE:
        return [tuple(-c for c in a) for a in simple]
    if convention == VACUOUS:
        return []
    raise ValueError(f"unknown convention {convention!r}")


@lru_cache(maxsize=None)
def root_operator(model: JordanModel, beta: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """Integer matrix of a root vector of the Levi factor, acting on V.

    Taken as D(u_i, u'_j) for basis vectors with alpha_j - alpha_i = beta;
    the root space is one-dimensional so the first nonzero one will do.
    """
    roots = model.coordinate_roots()
    basis = model.basis(exact_entries=True)
    for i, j in itertools.product(range(model.n), repeat=2):
        if tuple(x - y for x, y in zip(roots[j], roots[i])) != tuple(beta):
            continue
        mat = model.D(basis[i], basis[j])
        if any(v != 0 for v in mat.reshape(-1)):
            return tuple(tuple(int(exact.GaussQ(v).re) for v in row) for row in mat)
    raise ValueError(f"{beta} is not a root of the Levi factor of {model.spec}")


def raising_action(parabolic: MarkedParabolic, model: JordanModel, beta: Sequence[int],
                   s: ExponentPolynomial) -> ExponentPolynomial:
    """The derivation f -> df(z)(T_beta z); shifts weights by beta."""
    beta = tuple(int(c) for c in beta)
    allowed = set(parabolic.compact_positive) | {tuple(-c for c in a) for a in parabolic.compact_positive}
    if beta not in allowed:
        raise ValueError(f"{beta} is not in the Levi root system")
    chart = make_chart(model)
    mat = root_operator(model, beta)
    pos = {j: i for i, j in enumerate(chart.to_model)}
    out = ExponentPolynomial.zero(chart.n)
    for row, col_model in enumerate(chart.to_model):
        ds = s.derivative(row)
        if not ds:
            continue
        image = ExponentPolynomial.zero(chart.n)
        for c, v in enumerate(mat[col_model]):
            if v:
                image = image + ExponentPolynomial.variable(chart.n, pos[c]) * v
        out = out + ds * image
    return out


# -- section spaces -------------------------------------------------------------
class _Echelon:
    """Incremental fraction-free row space of integer coefficient vectors."""

    def __init__(self):
        self.monomials: dict[tuple[int, ...], int] = {}
        self.rows: list[list[int]] = []

    def _row(self, poly: ExponentPolynomial) -> list[int]:
        keys = sorted(poly.terms)
        ints = exact.clear_denominators([poly.coefficient(e) for e in keys])
        for e in keys:
            if e not in self.monomials:
                self.monomials[e] = len(self.monomials)
        row = [0] * len(self.monomials)
        for e, v in zip(keys, ints):
            row[self.monomials[e]] = v
        return row

    def rank(self) -> int:
        return len(self.rows)

    def add(self, polys: Sequence[ExponentPolynomial]) -> None:
        new = [self._row(p) for p in polys if p]
        width = len(self.monomials)
        rows = [r + [0] * (width - len(r)) for r in self.rows + new]
        self.rows = exact.bareiss_echelon(rows)[0] if rows else []
        self.rows = [exact.clear_denominators(r) for r in self.rows]

    def basis(self, n: int) -> list[ExponentPolynomial]:
        inv = {i: e for e, i in self.monomials.items()}
        return [ExponentPolynomial(n, {inv[i]: v for i, v in enumerate(r) if v}) for r in self.rows]


@dataclass(frozen=True)
class SectionSpace:
    model: JordanModel
    k: int
    basis: tuple[ExponentPolynomial, ...] = field(repr=False)
    samples: int = 0

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def parabolic(self) -> MarkedParabolic:
        return self.model.parabolic()


def _level_one(model: JordanModel, seed: int, patience: int) -> tuple[list[ExponentPolynomial], int]:
    parabolic = model.parabolic()
    target = full_dimension(parabolic, 1)
    rng = np.random.default_rng(seed)
    ech = _Echelon()
    ech.add([determinant_section(model, [0] * model.n)])
    stale = used = 0
    while ech.rank() < target and stale < patience:
        before = ech.rank()
        batch = [determinant_section(model, rng.integers(-2, 3, size=model.n)) for _ in range(target)]
        used += len(batch)
        ech.add(batch)
        stale = stale + 1 if ech.rank() == before else 0
    if ech.rank() != target:
        raise OkounkovError(
            f"{model.spec}: determinant sections span {ech.rank()} dimensions, expected {target}"
        )
    return ech.basis(make_chart(model).n), used


@lru_cache(maxsize=None)
def build_section_space(model: JordanModel, k: int, seed: int = 0, patience: int = 8) -> SectionSpace:
    """Span of the functions x -> Delta(x, b) (level 1) and their k-fold products.

    The dimension is checked against the Weyl dimension of k times the
    fundamental weight of the marked node; overshooting raises.
    """
    if k < 1:
        raise ValueError("k must be positive")
    parabolic = model.parabolic()
    target = full_dimension(parabolic, k)
    if k == 1:
        basis, used = _level_one(model, seed, patience)
        return SectionSpace(model, 1, tuple(basis), used)
    lower = build_section_space(model, k - 1, seed, patience)
    first = build_section_space(model, 1, seed, patience)
    ech = _Echelon()
    ech.add([f * g for f in lower.basis for g in first.basis])
    if ech.rank() != target:
        raise OkounkovError(f"{model.spec}, k={k}: products span {ech.rank()} dimensions, expected {target}")
    return SectionSpace(model, k, tuple(ech.basis(make_chart(model).n)), first.samples)


def weight_slice(space: SectionSpace, weight: Weight) -> list[ExponentPolynomial]:
    """A basis of the weight space of the given weight (projection onto its monomials)."""
    parabolic = space.parabolic
    pieces = []
    for s in space.basis:
        part = ExponentPolynomial(s.n, {e: c for e, c in s.terms.items()
                                        if monomial_weight(parabolic, space.k, e) == weight})
        if part:
            pieces.append(part)
    ech = _Echelon()
    ech.add(pieces)
    return ech.basis(parabolic.n)


def space_weights(space: SectionSpace) -> list[Weight]:
    parabolic = space.parabolic
    seen = {}
    for s in space.basis:
        for e in s.support():
            w = monomial_weight(parabolic, space.k, e)
            seen.setdefault(w, None)
    return list(seen)


def raising_kernel(space: SectionSpace, weight: Weight, convention: str) -> list[ExponentPolynomial]:
    """Vectors of the given weight killed by every root derivation of the raising set."""
    vectors = weight_slice(space, weight)
    if not vectors:
        return []
    model, parabolic = space.model, space.parabolic
    images = [[raising_action(parabolic, model, beta, v) for v in vectors]
              for beta in levi_roots(parabolic, convention)]
    monos = sorted({e for row in images for p in row for e in p.support()})
    if not monos:
        return [v.scaled_primitive() for v in vectors]
    mat = []
    for row in images:
        for e in monos:
            mat.append([p.coefficient(e) for p in row])
    kernel = exact.nullspace(mat, len(vectors))
    out = []
    for vec in kernel:
        s = ExponentPolynomial.zero(parabolic.n)
        for c, v in zip(vec, vectors):
            if c:
                s = s + v * c
        out.append(s.scaled_primitive())
    return out


def _expected_labels(parabolic: MarkedParabolic, k: int) -> dict[Weight, tuple[int, ...]]:
    return {parabolic.gamma_weight(m, k): m for m in integral_points(k, parabolic.r)}


@lru_cache(maxsize=None)
def resolve_convention(model: JordanModel) -> str:
    """Pick the raising set whose level-one kernels sit exactly at the staircase weights."""
    parabolic = model.parabolic()
    if not parabolic.compact_positive:
        return VACUOUS
    space = build_section_space(model, 1)
    expected = set(_expected_labels(parabolic, 1))
    for convention in (POSITIVE, OPPOSITE):
        found = {}
        for w in space_weights(space):
            dim = len(raising_kernel(space, w, convention))
            if dim:
                found[w] = dim
        if set(found) == expected and all(d == 1 for d in found.values()):
            return convention
    raise OkounkovError(f"{model.spec}: neither raising convention reproduces the staircase weights")


def highest_weight_vector(space: SectionSpace, m: Sequence[int], convention: str | None = None
                          ) -> ExponentPolynomial:
    """The unique (up to scale) vector of weight k*lambda + sum m_i gamma_i killed by the raising set."""
    parabolic = space.parabolic
    m = tuple(int(v) for v in m)
    if m not in set(integral_points(space.k, parabolic.r)):
        raise ValueError(f"{m} is not a staircase vector for k={space.k}")
    convention = resolve_convention(space.model) if convention is None else convention
    kernel = raising_kernel(space, parabolic.gamma_weight(m, space.k), convention)
    if len(kernel) != 1:
        raise OkounkovError(
            f"{space.model.spec}, k={space.k}, m={m}: raising kernel has dimension {len(kernel)}"
        )
    return kernel[0]


# -- the body ------------------------------------------------------------------------
def hull_vertices(points: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Points that are not convex combinations of the others (one LP each)."""
    pts = [tuple(p) for p in dict.fromkeys(tuple(p) for p in points)]
    out = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not others:
            out.append(p)
            continue
        a_eq = np.vstack([np.array(others, dtype=float).T, np.ones(len(others))])
        b_eq = np.append(np.array(p, dtype=float), 1.0)
        res = linprog(np.zeros(len(others)), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
        if res.status != 0:
            out.append(p)
    return out


def _sum_of_generators(target: tuple[int, ...], gens: Sequence[tuple[int, ...]], k: int):
    for combo in itertools.combinations_with_replacement(range(len(gens)), k):
        total = tuple(sum(gens[i][c] for i in combo) for c in range(len(target)))
        if total == target:
            return combo
    return None


@dataclass(frozen=True)
class OkounkovData:
    model: JordanModel
    convention: str
    labels: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[int, tuple[int, ...]], ...]
    lambda_images: tuple[Weight, ...]
    body_vertices: tuple[tuple[int, ...], ...]
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def okounkov_pipeline(model: JordanModel, parabolic: MarkedParabolic | None = None,
                      levels: Sequence[int] = (2,), strict: bool = True) -> OkounkovData:
    parabolic = model.parabolic() if parabolic is None else parabolic
    check_compatible(model, parabolic)
    convention = resolve_convention(model)
    space = build_section_space(model, 1)
    labels = tuple(staircase_vectors(parabolic.r))
    vals = [valuation(highest_weight_vector(space, m, convention)) for m in labels]
    images = tuple(monomial_weight(parabolic, 1, v) for v in vals)
    checks = []

    checks.append(Check("distinct generator valuations", len(set(vals)) == len(vals),
                        f"{len(set(vals))} distinct of {len(vals)}"))
    targets = [parabolic.gamma_weight(m, 1) for m in labels]
    checks.append(Check("lambda images are the level-one integral points",
                        list(images) == targets and set(images) == set(parabolic.lambda_vertices(1)),
                        ", ".join(str(w) for w in images)))

    for k in levels:
        level = build_section_space(model, k)
        bad = []
        for m in integral_points(k, parabolic.r):
            v = valuation(highest_weight_vector(level, m, convention))
            if _sum_of_generators(v, vals, k) is None:
                bad.append(m)
        checks.append(Check(f"level {k} valuations are sums of generators", not bad,
                            f"offending m: {bad}" if bad else f"{len(integral_points(k, parabolic.r))} vectors"))

    verts = hull_vertices(vals)
    vert_images = {monomial_weight(parabolic, 1, v) for v in verts}
    checks.append(Check("hull vertex count at most r+1", len(verts) <= parabolic.r + 1, f"{len(verts)} vertices"))
    checks.append(Check("lambda maps hull vertices onto the polytope vertices",
                        vert_images == set(parabolic.lambda_vertices(1)) and len(vert_images) == len(verts),
                        f"{len(vert_images)} images"))
    data = OkounkovData(model, convention, labels, tuple((1, v) for v in vals), images,
                        tuple(verts), tuple(checks))
    if strict and not data.ok:
        failed = next(c for c in data.checks if not c.ok)
        raise OkounkovError(f"{model.spec}: {failed.name} failed ({failed.detail})")
    return data
