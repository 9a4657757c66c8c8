"""The moment map in Bergman-operator form, its spectral forms, and the polytope.

Operators are complex n x n matrices on V in the model's coordinates.  The
Hermitian structure (x|z) is a multiple of the standard one on these
coordinates, so adjoints are conjugate transposes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.interpolate import BarycentricInterpolator

from .jordan import JordanModel
from .lie import MarkedParabolic, Weight
from .structure import (
    SpectralData,
    adapted_frame,
    is_tripotent,
    peirce_from_D,
    spectral_decomposition,
)

NODE_COND = 1e6
POLY_COND = 1e8


def _cond(mat: np.ndarray) -> float:
    # measured against the identity scale, so a 1 x 1 near-zero matrix counts as singular
    sv = np.linalg.svd(mat, compute_uv=False)
    return float(max(1.0, sv[0]) / sv[-1]) if sv[-1] > 0 else np.inf


@dataclass(frozen=True, eq=False)
class PairPoint:
    """A representative (x, a) of a point of the compact space, optionally in normal form."""

    x: np.ndarray
    a: np.ndarray
    tripotent: np.ndarray | None = None
    z: np.ndarray | None = None

    @property
    def has_normal_form(self) -> bool:
        return self.tripotent is not None


def chart_point(model: JordanModel, x) -> PairPoint:
    x = np.asarray(x, dtype=complex)
    return PairPoint(x, np.zeros(model.n, complex))


def normal_form_point(model: JordanModel, e, z, check: bool = True) -> PairPoint:
    """The point [[e + z : e-bar]] for a tripotent e and z in V_0(e)."""
    e = np.asarray(e, dtype=complex)
    z = np.asarray(z, dtype=complex)
    if check:
        if not is_tripotent(model, e, 1e-10):
            raise ValueError("e is not a tripotent")
        _, _, p0 = peirce_from_D(model.D(e, model.bar(e)))
        if np.linalg.norm(p0 @ z - z) > 1e-10 * max(1.0, np.linalg.norm(z)):
            raise ValueError("z is not in the Peirce 0-space of e")
    return PairPoint(e + z, model.bar(e), e, z)


@dataclass(frozen=True, eq=False)
class MomentValue:
    operator: np.ndarray
    frame: tuple[np.ndarray, ...] | None = field(default=None, repr=False)

    @property
    def anti_hermitian_defect(self) -> float:
        m = self.operator
        return float(np.linalg.norm(m + m.conj().T, 2))

    def nu(self, frame: Sequence[np.ndarray] | None = None) -> np.ndarray:
        """Profile nu_j read off on the diagonal Peirce blocks of an adapted frame."""
        frame = self.frame if frame is None else frame
        if frame is None:
            raise ValueError("no adapted frame available for this value")
        t = -1j * self.operator
        out = []
        for c in frame:
            ratio = np.vdot(c, t @ c) / np.vdot(c, c)
            out.append((1.0 - ratio.real) / 2.0)
        return np.array(out)


def gamma_operator_bergman(model: JordanModel, x, a) -> np.ndarray:
    """Gamma_{x,a} = B(x, a) B(x^a, -xbar^abar) B(abar, xbar), where all factors exist."""
    xb, ab = model.bar(x), model.bar(a)
    xa = model.quasi_inverse(x, a)
    yb = model.quasi_inverse_dual(xb, ab)
    return model.bergman(x, a) @ model.bergman(xa, -yb) @ model.bergman(ab, xb)


def gamma_operator_polynomial(model: JordanModel, x, a) -> np.ndarray:
    """Gamma_{x,a} = B(x, a - xbar^abar) B(abar, xbar); needs (xbar, abar) quasi-invertible."""
    xb, ab = model.bar(x), model.bar(a)
    yb = model.quasi_inverse_dual(xb, ab)
    return model.bergman(x, a - yb) @ model.bergman(ab, xb)


def gamma_operator(model: JordanModel, x, a, rng: np.random.Generator | None = None,
                   nodes: int = 16) -> np.ndarray:
    """Gamma_{x,a}, total in (x, a).

    Uses the factored polynomial form when (xbar, abar) is comfortably
    quasi-invertible.  Elsewhere Gamma is still a polynomial in a and abar, so
    it is recovered by interpolating t -> Gamma_{x, a + (t - 1) w} at
    Chebyshev nodes around t = 1 (w a random direction), where the
    factored form is defined.
    """
    x = np.asarray(x, dtype=complex)
    a = np.asarray(a, dtype=complex)
    if _cond(model.bergman_dual(model.bar(x), model.bar(a))) < POLY_COND:
        return gamma_operator_polynomial(model, x, a)
    rng = np.random.default_rng(2024) if rng is None else rng
    ts = 1.0 + 0.5 * np.cos((2 * np.arange(nodes) + 1) * np.pi / (2 * nodes))
    for _ in range(16):
        w = (rng.normal(size=model.n) + 1j * rng.normal(size=model.n)) / np.sqrt(2 * model.n)
        samples = []
        for t in ts:
            at = a + (t - 1.0) * w
            if _cond(model.bergman_dual(model.bar(x), model.bar(at))) > NODE_COND:
                break
            samples.append(gamma_operator_polynomial(model, x, at))
        else:
            values = np.stack(samples).reshape(nodes, -1)
            interp = BarycentricInterpolator(ts, values)
            return np.asarray(interp(1.0)).reshape(model.n, model.n)
    raise ArithmeticError("no well-conditioned interpolation line found")


def moment_chart(model: JordanModel, x) -> MomentValue:
    """i (B(x, -xbar)^{-1} - Q_x B(-xbar, x)^{-1} Q_xbar) on the chart a = 0."""
    x = np.asarray(x, dtype=complex)
    xb = model.bar(x)
    first = np.linalg.inv(model.bergman(x, -xb))
    second = model.Q(x) @ np.linalg.solve(model.bergman_dual(-xb, x), model.Q_dual(xb))
    frame, _ = adapted_frame(model, None, x)
    return MomentValue(1j * (first - second), tuple(frame))


def moment_spectral(model: JordanModel, spectral: SpectralData, offset=None) -> MomentValue:
    """i (Id - sum sigma^2/(1+sigma^2) D(c, cbar) - D(e, ebar)), the last term only with ``offset`` = e."""
    m = np.eye(model.n, dtype=complex)
    for s, c in zip(spectral.sigmas, spectral.tripotents):
        m = m - (s * s / (1 + s * s)) * model.D(c, model.bar(c))
    if offset is not None:
        e = np.asarray(offset, dtype=complex)
        m = m - model.D(e, model.bar(e))
    return MomentValue(1j * m)


def moment_normal_form(model: JordanModel, point: PairPoint) -> MomentValue:
    """Closed form on a normal-form point [[e + z : ebar]]."""
    if not point.has_normal_form:
        raise ValueError("point carries no normal form")
    value = moment_spectral(model, spectral_decomposition(model, point.z), offset=point.tripotent)
    frame, _ = adapted_frame(model, point.tripotent, point.z)
    return MomentValue(value.operator, tuple(frame))


def moment_general(model: JordanModel, point: PairPoint) -> MomentValue:
    """i (B(abar, xbar) Gamma^{-1} B(x, a) - Q_x Gamma'^{-1} Q_xbar) for any representative."""
    x, a = np.asarray(point.x, complex), np.asarray(point.a, complex)
    xb, ab = model.bar(x), model.bar(a)
    g = gamma_operator(model, x, a)
    first = model.bergman(ab, xb) @ np.linalg.solve(g, model.bergman(x, a))
    second = model.Q(x) @ np.linalg.solve(g.T, model.Q_dual(xb))
    frame = _frame_for_point(model, point)
    return MomentValue(1j * (first - second), frame)


def _frame_for_point(model: JordanModel, point: PairPoint):
    if point.has_normal_form:
        return tuple(adapted_frame(model, point.tripotent, point.z)[0])
    if model.is_quasi_invertible(point.x, point.a):
        return tuple(adapted_frame(model, None, model.quasi_inverse(point.x, point.a))[0])
    return None


@dataclass(frozen=True)
class MomentWeight:
    nu: tuple[float, ...]
    coords: tuple[float, ...]
    in_polytope: bool


def moment_to_weight(value: MomentValue, parabolic: MarkedParabolic,
                     frame: Sequence[np.ndarray] | None = None, rounding: float = 1e-9) -> MomentWeight:
    """lambda + sum nu_j gamma_j, using i Id -> lambda and i D(e_j, ebar_j) -> -gamma_j."""
    nu = value.nu(frame)
    nu = np.sort(np.round(nu / rounding) * rounding)[::-1] + 0.0
    inside = bool(nu[0] <= 1.0 and nu[-1] >= 0.0)
    lam = np.array(parabolic.lam.as_floats())
    coords = lam + sum(v * np.array(g, dtype=float) for v, g in zip(nu, parabolic.gammas))
    return MomentWeight(tuple(float(v) for v in nu), tuple(float(c) for c in coords), inside)


@dataclass(frozen=True)
class Polytope:
    """k times the simplex {lambda + sum nu_j gamma_j : 1 >= nu_1 >= ... >= nu_r >= 0}."""

    k: int
    vertices: tuple[Weight, ...]
    lam: Weight
    gammas: tuple[tuple[int, ...], ...]

    @property
    def inequalities(self) -> list[str]:
        r = len(self.gammas)
        out = [f"{self.k} >= nu_1"]
        out += [f"nu_{j} >= nu_{j + 1}" for j in range(1, r)]
        out.append(f"nu_{r} >= 0")
        return out

    def contains(self, nu: Sequence, tol: float = 0.0) -> bool:
        seq = [Fraction(self.k)] + list(nu) + [Fraction(0)]
        return all(seq[i] + tol >= seq[i + 1] for i in range(len(seq) - 1))

    def point(self, nu: Sequence) -> Weight:
        w = self.lam * self.k
        for v, g in zip(nu, self.gammas):
            w = w + Weight(g) * v
        return w


def moment_polytope(parabolic: MarkedParabolic, k: int = 1) -> Polytope:
    if k < 1:
        raise ValueError("k must be positive")
    return Polytope(k, tuple(parabolic.lambda_vertices(k)), parabolic.lam, parabolic.gammas)


def _peirce_close(model: JordanModel, c1, c2, tol: float) -> bool:
    p1 = peirce_from_D(model.D(c1, model.bar(c1)))
    p2 = peirce_from_D(model.D(c2, model.bar(c2)))
    return all(np.linalg.norm(a - b) <= tol for a, b in zip(p1, p2))


def same_fibre(model: JordanModel, p1: PairPoint, p2: PairPoint, tol: float = 1e-8) -> bool:
    """Equal sigma profiles and Peirce-equivalent tripotents (e and each spectral piece)."""
    if not (p1.has_normal_form and p2.has_normal_form):
        raise ValueError("same_fibre needs normal-form points")
    if not _peirce_close(model, p1.tripotent, p2.tripotent, tol):
        return False
    s1 = spectral_decomposition(model, p1.z)
    s2 = spectral_decomposition(model, p2.z)
    if len(s1) != len(s2):
        return False
    for a, b in zip(s1.sigmas, s2.sigmas):
        if abs(a - b) > tol * max(1.0, a):
            return False
    return all(_peirce_close(model, c, d, tol) for c, d in zip(s1.tripotents, s2.tripotents))
