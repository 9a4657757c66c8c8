"""Verification suites run by ``hermsym verify`` and the acceptance tests.

Every suite takes a model, a seeded generator and a tolerance, and returns a
list of :class:`~hermsym.checks.Check`.  Exact suites ignore the tolerance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

import numpy as np

from . import exact
from .branching import decompose, integral_points, is_multiplicity_free, staircase_decomposition
from .checks import Check
from .jordan import JordanModel, NotQuasiInvertible
from .moment import (
    PairPoint,
    moment_chart,
    moment_general,
    moment_normal_form,
    moment_spectral,
    moment_to_weight,
    normal_form_point,
    same_fibre,
)
from .okounkov import OkounkovError, build_section_space, highest_weight_vector, okounkov_pipeline
from .structure import (
    is_tripotent,
    make_frame,
    make_tripotent,
    peirce_from_D,
    rank,
    rank_condition_check,
    spectral_decomposition,
)

K_MAX = {"rect:1,1": 20, "rect:1,2": 10, "rect:2,2": 6, "rect:2,3": 4}
DEFAULT_K_MAX = 3
MAX_DIM = 16


def k_max(model: JordanModel) -> int:
    return K_MAX.get(model.spec, DEFAULT_K_MAX)


# -- random data ---------------------------------------------------------------
def exact_element(model: JordanModel, rng: np.random.Generator) -> np.ndarray:
    """Random element with entries in (1/2) Z[i], |parts| <= 3/2."""
    re = rng.integers(-3, 4, size=model.n)
    im = rng.integers(-3, 4, size=model.n)
    out = np.empty(model.n, dtype=object)
    for i in range(model.n):
        out[i] = exact.GaussQ(Fraction(int(re[i]), 2), Fraction(int(im[i]), 2))
    return out


def exact_frame(model: JordanModel, rng: np.random.Generator) -> list[np.ndarray]:
    h = model.random_automorphism(rng, exact_entries=True)
    return [h @ c for c in model.frame(exact_entries=True)]


def random_element(model: JordanModel, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.normal(size=model.n) + 1j * rng.normal(size=model.n))


def random_normal_form(model: JordanModel, rng: np.random.Generator) -> PairPoint:
    """[[e + z : e-bar]] with e a random tripotent of random rank and z in V_0(e)."""
    frame = model.frame()
    h = model.random_automorphism(rng)
    k = int(rng.integers(0, model.rank + 1))
    e = h @ sum(frame[:k]) if k else np.zeros(model.n, complex)
    _, _, p0 = peirce_from_D(model.D(e, model.bar(e)))
    z = p0 @ random_element(model, rng)
    return normal_form_point(model, e, z)


def _all_equal(a, b) -> bool:
    return all(u == v for u, v in zip(np.asarray(a).reshape(-1), np.asarray(b).reshape(-1)))


def _is_zero(a) -> bool:
    return all(v == 0 for v in np.asarray(a).reshape(-1))


def _key(a: int, b: int) -> tuple[int, int]:
    return (min(a, b), max(a, b))


def _count(name: str, trials: int, fn: Callable[[int], bool]) -> Check:
    bad = [t for t in range(trials) if not fn(t)]
    return Check(name, not bad, f"{trials - len(bad)}/{trials} instances" + (f", first failure #{bad[0]}" if bad else ""))


def _worst(name: str, values: list[float], tol: float) -> Check:
    worst = max(values) if values else 0.0
    return Check(name, worst <= tol, f"max {worst:.3e} over {len(values)} (tol {tol:.1e})")


# -- exact Jordan identities -------------------------------------------------------
def jordan_identities(model: JordanModel, rng: np.random.Generator, instances: int = 50,
                      tolerance: float | None = None) -> list[Check]:
    checks = []
    n, p = model.n, model.structure_constant

    def bergman_case(_):
        x, y, z = (exact_element(model, rng) for _ in range(3))
        half = Fraction(1, 2)
        qy_z = half * model.triple_product_dual(y, z, y)
        direct = z - model.triple_product(x, y, z) + half * model.triple_product(x, qy_z, x)
        if not _all_equal(model.bergman(x, y) @ z, direct):
            return False
        # fundamental formula Q_{x - Q_x y} = B(x, y) Q_x
        return _all_equal(model.Q(x - model.Q(x) @ y), model.bergman(x, y) @ model.Q(x))

    checks.append(_count("bergman operator B = Id - D + QQ", instances, bergman_case))

    def det_power_case(_):
        x, y = exact_element(model, rng), exact_element(model, rng)
        return exact.det(model.bergman(x, y)) == model.generic_det(x, y) ** p

    checks.append(_count("det B(x, y) = Delta(x, y)^p", instances, det_power_case))

    def addition_case(_):
        for _ in range(20):
            u, v, w = (exact_element(model, rng) for _ in range(3))
            try:
                uv = model.quasi_inverse(u, v)
            except (NotQuasiInvertible, ZeroDivisionError):
                continue
            return model.generic_det(u, v) * model.generic_det(uv, w) == model.generic_det(u, v + w)
        return False

    checks.append(_count("Delta(u,v) Delta(u^v,w) = Delta(u,v+w)", instances, addition_case))

    def involution_case(_):
        x, y = exact_element(model, rng), exact_element(model, rng)
        return _all_equal(model.Q(model.bar(x)) @ model.bar(y), np.conjugate(model.Q(x) @ y))

    checks.append(_count("Q_xbar ybar = conj(Q_x y)", instances, involution_case))

    def constant_case(_):
        e = exact_frame(model, rng)[0]
        t = make_tripotent(model, e)
        return model.trace_form(e, model.bar(e)) == p and p == 2 + exact.rank(t.P(1))

    checks.append(_count("p = tau(e, ebar) = 2 + dim V_1(e)", instances, constant_case))

    def peirce_case(_):
        frame = exact_frame(model, rng)
        k = int(rng.integers(1, model.rank + 1))
        e = sum(frame[:k])
        t = make_tripotent(model, e)
        eye = exact.identity(n, True)
        if not _all_equal(t.P(2) + t.P(1) + t.P(0), eye):
            return False
        i, j, l = (int(v) for v in rng.integers(0, 3, size=3))
        a = t.P(i) @ exact_element(model, rng)
        b = t.P_dual(j) @ exact_element(model, rng)
        c = t.P(l) @ exact_element(model, rng)
        prod = model.triple_product(a, b, c)
        target = i - j + l
        if 0 <= target <= 2:
            return _all_equal(t.P(target) @ prod, prod)
        return _is_zero(prod)

    checks.append(_count("Peirce rules {V_i V'_j V_k} in V_(i-j+k)", instances, peirce_case))

    def joint_case(_):
        frame = make_frame(model, exact_frame(model, rng))
        r = len(frame)
        eye = exact.identity(n, True)
        total = sum(frame.joint.values())
        if not _all_equal(total, eye):
            return False
        keys = list(frame.joint)
        for ell, trip in enumerate(frame.tripotents, start=1):
            for (i, j) in keys:
                pij = frame.joint[(i, j)]
                if not _all_equal(trip.D @ pij, pij * (int(i == ell) + int(j == ell))):
                    return False
        i, j, a, b, c, d = (int(v) for v in rng.integers(0, r + 1, size=6))
        x = frame.joint[_key(i, j)] @ exact_element(model, rng)
        y = frame.joint_dual[_key(a, b)] @ exact_element(model, rng)
        z = frame.joint[_key(c, d)] @ exact_element(model, rng)
        prod = model.triple_product(x, y, z)
        targets = set()
        for p1, p2 in ((i, j), (j, i)):
            for q1, q2 in ((a, b), (b, a)):
                for s1, s2 in ((c, d), (d, c)):
                    if p2 == q1 and q2 == s1:
                        targets.add(_key(p1, s2))
        if not targets:
            return _is_zero(prod)
        proj = sum(frame.joint[t] for t in targets)
        return _all_equal(proj @ prod, prod)

    checks.append(_count("joint Peirce rules", instances, joint_case))
    return checks


# -- numeric structure -----------------------------------------------------------
def peirce_suite(model: JordanModel, rng: np.random.Generator, instances: int = 100,
                 tolerance: float = 1e-10) -> list[Check]:
    checks = []
    errs, trip_errs, orth = [], [], []
    for _ in range(instances):
        x = random_element(model, rng, rng.uniform(0.1, 3.0))
        sd = spectral_decomposition(model, x)
        errs.append(float(np.linalg.norm(sd.reconstruct(model.n) - x) / np.linalg.norm(x)))
        for c in sd.tripotents:
            trip_errs.append(float(np.linalg.norm(model.Q(c) @ model.bar(c) - c)))
        for i, c in enumerate(sd.tripotents):
            _, _, p0 = peirce_from_D(model.D(c, model.bar(c)))
            for d in sd.tripotents[i + 1:]:
                orth.append(float(np.linalg.norm(p0 @ d - d)))
    checks.append(_worst("spectral reconstruction", errs, tolerance))
    checks.append(_worst("spectral pieces are tripotents", trip_errs, max(tolerance, 1e-9)))
    checks.append(_worst("spectral pieces are orthogonal", orth, max(tolerance, 1e-9)))

    def rank_case(_):
        h = model.random_automorphism(rng)
        k = int(rng.integers(0, model.rank + 1))
        sig = np.sort(rng.uniform(0.5, 2.0, size=model.rank))[::-1]
        x = sum((h @ c) * s for c, s in zip(model.frame()[:k], sig[:k])) if k else np.zeros(model.n, complex)
        if rank(model, x) != k:
            return False
        return all(rank_condition_check(model, x, j, rng=rng) == (j > k) for j in range(1, model.rank + 1))

    checks.append(_count("rank conditions: Delta_c(x) = 0 for all rank-j c iff j > rank x",
                         max(10, instances // 5), rank_case))

    def tripotent_case(_):
        h = model.random_automorphism(rng)
        e = h @ model.frame()[0]
        return is_tripotent(model, e, 1e-10) and not is_tripotent(model, 2 * e, 1e-10)

    checks.append(_count("unitary images of frame elements are tripotents", instances, tripotent_case))
    return checks


# -- moment map --------------------------------------------------------------------
def moment_suite(model: JordanModel, rng: np.random.Generator, instances: int = 100,
                 tolerance: float = 1e-9) -> list[Check]:
    checks = []
    parabolic = model.parabolic()
    d12, d34, anti, chamber = [], [], [], []
    for _ in range(instances):
        x = random_element(model, rng, rng.uniform(0.1, 3.0))
        m1 = moment_chart(model, x)
        m2 = moment_spectral(model, spectral_decomposition(model, x))
        d12.append(float(np.linalg.norm(m1.operator - m2.operator, 2)))
        anti.append(m1.anti_hermitian_defect)
        w = moment_to_weight(m1, parabolic)
        chamber.append(w.in_polytope)
        pt = random_normal_form(model, rng)
        m3 = moment_general(model, pt)
        m4 = moment_normal_form(model, pt)
        d34.append(float(np.linalg.norm(m3.operator - m4.operator, 2)))
        anti.append(m3.anti_hermitian_defect)
        chamber.append(moment_to_weight(m3, parabolic).in_polytope)
    checks.append(_worst("chart formula = spectral formula", d12, tolerance))
    checks.append(_worst("general formula = normal-form formula", d34, tolerance))
    checks.append(_worst("moment values are anti-Hermitian", anti, tolerance))
    checks.append(Check("moment weights lie in the polytope", all(chamber), f"{sum(chamber)}/{len(chamber)}"))

    eq = []
    for _ in range(max(10, instances // 2)):
        h = model.random_automorphism(rng)
        x = random_element(model, rng)
        lhs = moment_chart(model, h @ x).operator
        rhs = h @ moment_chart(model, x).operator @ np.linalg.inv(h)
        eq.append(float(np.linalg.norm(lhs - rhs, 2)))
    checks.append(_worst("equivariance under unitary automorphisms", eq, tolerance))

    rep = []
    for _ in range(max(10, instances // 2)):
        x = random_element(model, rng)
        a = random_element(model, rng, 0.4)
        b = random_element(model, rng, 0.4)
        try:
            other = PairPoint(model.quasi_inverse(x, a - b), b)
        except NotQuasiInvertible:
            continue
        rep.append(float(np.linalg.norm(moment_general(model, PairPoint(x, a)).operator
                                        - moment_general(model, other).operator, 2)))
    checks.append(_worst("independence of the representative", rep, tolerance))
    checks.extend(fibre_checks(model, rng, max(10, instances // 5), tolerance * 0.1))
    return checks


def fibre_pair(model: JordanModel, rng: np.random.Generator, same: bool = True):
    """Two normal forms over one frame; Peirce-equivalent with equal sigma when ``same``."""
    h = model.random_automorphism(rng)
    prim = [h @ c for c in model.frame()]
    k = int(rng.integers(0, model.rank))
    e = sum(prim[:k]) if k else np.zeros(model.n, complex)
    sig = np.sort(rng.uniform(0.3, 2.0, size=model.rank - k))[::-1]
    rest = prim[k:]
    z = sum(s * c for s, c in zip(sig, rest))
    ph = np.exp(1j * rng.uniform(0, 2 * np.pi, size=model.rank + 1))
    e2 = ph[0] * e
    if same:
        z2 = sum(s * p * c for s, p, c in zip(sig, ph[1:], rest))
    else:
        sig2 = sig.copy()
        sig2[-1] = sig2[-1] * 1.5 + 0.1
        z2 = sum(s * c for s, c in zip(sig2, rest))
    return normal_form_point(model, e, z), normal_form_point(model, e2, z2)


def fibre_checks(model: JordanModel, rng: np.random.Generator, instances: int, tolerance: float = 1e-10,
                 separation: float = 1e-6) -> list[Check]:
    same, gaps, flags = [], [], []
    for _ in range(instances):
        p1, p2 = fibre_pair(model, rng, True)
        same.append(float(np.linalg.norm(moment_general(model, p1).operator
                                         - moment_general(model, p2).operator, 2)))
        flags.append(same_fibre(model, p1, p2))
        q1, q2 = fibre_pair(model, rng, False)
        gaps.append(float(np.linalg.norm(moment_general(model, q1).operator
                                         - moment_general(model, q2).operator, 2)))
        flags.append(not same_fibre(model, q1, q2))
    return [
        _worst("equal moment values on a fibre", same, tolerance),
        Check("distinct sigma profiles separate moment values", min(gaps) >= separation,
              f"min separation {min(gaps):.3e} (need {separation:.1e})"),
        Check("same_fibre agrees with the construction", all(flags), f"{sum(flags)}/{len(flags)}"),
    ]


# -- branching and sections ----------------------------------------------------------
def branching_suite(model: JordanModel, rng: np.random.Generator | None = None, k_top: int | None = None,
                    tolerance: float | None = None) -> list[Check]:
    parabolic = model.parabolic()
    k_top = k_max(model) if k_top is None else k_top
    bad, mf, fact = [], [], []
    for k in range(1, k_top + 1):
        table = decompose(parabolic, k)
        if not table.ok:
            bad.append((k, table.total, table.expected_total))
        if not is_multiplicity_free(table):
            mf.append(k)
        for m in integral_points(k, parabolic.r):
            parts = staircase_decomposition(m, k)
            if tuple(map(sum, zip(*parts))) != m:
                fact.append((k, m))
    return [
        Check("sum of K-type dimensions = dim H^0(L^k)", not bad,
              f"k = 1..{k_top}" + (f"; mismatches {bad}" if bad else "")),
        Check("no repeated K-type", not mf, f"repeats at k={mf}" if mf else f"k = 1..{k_top}"),
        Check("staircase factorization", not fact, f"{len(fact)} failures"),
    ]


def section_suite(model: JordanModel, k_top: int) -> list[Check]:
    checks = []
    for k in range(1, k_top + 1):
        try:
            space = build_section_space(model, k)
            ok, detail = True, f"dimension {space.dimension}"
        except OkounkovError as err:
            ok, detail = False, str(err)
        checks.append(Check(f"section space rank at k={k}", ok, detail))
    return checks


def multiplicity_suite(model: JordanModel, k_top: int) -> list[Check]:
    bad = []
    total = 0
    for k in range(1, k_top + 1):
        space = build_section_space(model, k)
        for m in integral_points(k, model.rank):
            total += 1
            try:
                highest_weight_vector(space, m)
            except OkounkovError as err:
                bad.append(str(err))
    return [Check("raising kernels are one-dimensional", not bad,
                  f"{total} kernels" + (f"; {bad[0]}" if bad else ""))]


def okounkov_suite(model: JordanModel, rng: np.random.Generator | None = None,
                   tolerance: float | None = None, levels=(2,)) -> list[Check]:
    try:
        data = okounkov_pipeline(model, levels=levels, strict=False)
    except OkounkovError as err:
        return [Check("okounkov pipeline", False, str(err))]
    return list(data.checks) + multiplicity_suite(model, 2)


SUITES = {
    "jordan-identities": jordan_identities,
    "peirce": peirce_suite,
    "moment": moment_suite,
    "branching": branching_suite,
    "okounkov": okounkov_suite,
}
