"""Concrete simple Jordan pairs with positive Hermitian involution.

Coordinates.  An element of V is a length-``n`` coordinate vector.  An
element of the dual space V' is stored in the *dual* coordinates, so the
natural pairing is ``sum(x * y)`` and the involution x -> x-bar is plain
entrywise conjugation in both directions.  All Jordan maps are therefore
multilinear in their arguments, which keeps the exact backend honest.

Two scalar backends share the same code: complex128 arrays, and numpy
object arrays holding :class:`~hermsym.exact.GaussQ` entries (or polynomial
entries, for symbolic expansion of the determinant).
"""

from __future__ import annotations

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import exact
from .lie import MarkedParabolic, build_marked_parabolic

SINGULAR_RTOL = 1e-10


class NotQuasiInvertible(ArithmeticError):
    """Raised when B(x, y) is singular (exactly, or to working tolerance)."""


def _is_object(*arrays) -> bool:
    return any(isinstance(a, np.ndarray) and a.dtype == object for a in arrays)


def _ensure_quasi_invertible(mat: np.ndarray) -> None:
    if mat.dtype == object:
        if exact.rank(mat) < mat.shape[0]:
            raise NotQuasiInvertible("B(x, y) is singular")
        return
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv[0] == 0 or sv[-1] < SINGULAR_RTOL * sv[0]:
        raise NotQuasiInvertible(f"B(x, y) is singular to tolerance (smin/smax={sv[-1] / max(sv[0], 1e-300):.2e})")


def solve_operator(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    if mat.dtype == object or (isinstance(rhs, np.ndarray) and rhs.dtype == object):
        return exact.solve(mat, rhs)
    return np.linalg.solve(mat, rhs)


def inverse(mat: np.ndarray) -> np.ndarray:
    if mat.dtype == object:
        return exact.inv(mat)
    return np.linalg.inv(mat)


class JordanModel(ABC):
    """A simple Jordan pair (V, V') with involution, in coordinates."""

    kind: str
    n: int
    rank: int
    structure_constant: int

    # -- model specific -------------------------------------------------
    @abstractmethod
    def triple_product(self, x, y, z):
        """{x, y, z} for x, z in V and y in V'."""

    @abstractmethod
    def triple_product_dual(self, y, x, w):
        """{y, x, w} for y, w in V' and x in V."""

    @abstractmethod
    def generic_det(self, x, y):
        """The generic minimum polynomial Delta(x, y)."""

    @abstractmethod
    def frame(self) -> list[np.ndarray]:
        """Standard frame, ordered to match the strongly orthogonal cascade."""

    @abstractmethod
    def parabolic(self) -> MarkedParabolic:
        """The Hermitian marking this model realizes."""

    @abstractmethod
    def coordinate_roots(self) -> list[tuple[int, ...]]:
        """Noncompact root attached to each coordinate function."""

    @abstractmethod
    def primitive_pieces(self, x: np.ndarray) -> list[tuple[float, np.ndarray]]:
        """Numeric decomposition x = sum s_j c_j into r orthogonal primitive tripotents.

        All r slots are filled (s_j = 0 for padding) and s is nonincreasing.
        """

    @abstractmethod
    def exact_rank(self, x) -> int:
        """Rank of an element with exact entries."""

    @abstractmethod
    def random_automorphism(self, rng: np.random.Generator, exact_entries: bool = False) -> np.ndarray:
        """A unitary automorphism h of V as an n x n matrix (dual action is conj(h))."""

    @property
    def spec(self) -> str:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, JordanModel) and other.spec == self.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"<{self.spec}>"

    # -- generic calculus ------------------------------------------------
    def bar(self, x):
        return np.conjugate(x)

    def basis(self, exact_entries: bool = False) -> list[np.ndarray]:
        eye = exact.identity(self.n, exact_entries)
        return [eye[:, k].copy() for k in range(self.n)]

    def _columns(self, fn, exact_entries: bool) -> np.ndarray:
        cols = [fn(u) for u in self.basis(exact_entries)]
        return np.stack(cols, axis=1)

    def D(self, x, y) -> np.ndarray:
        """Matrix of z -> {x, y, z} on V."""
        return self._columns(lambda u: self.triple_product(x, y, u), _is_object(x, y))

    def D_dual(self, y, x) -> np.ndarray:
        """Matrix of w -> {y, x, w} on V'."""
        return self._columns(lambda u: self.triple_product_dual(y, x, u), _is_object(x, y))

    def Q(self, x) -> np.ndarray:
        """Matrix of y -> Q_x y, a map V' -> V."""
        half = Fraction(1, 2) if _is_object(x) else 0.5
        return self._columns(lambda u: half * self.triple_product(x, u, x), _is_object(x))

    def Q_dual(self, y) -> np.ndarray:
        """Matrix of x -> Q_y x, a map V -> V'."""
        half = Fraction(1, 2) if _is_object(y) else 0.5
        return self._columns(lambda u: half * self.triple_product_dual(y, u, y), _is_object(y))

    def bergman(self, x, y) -> np.ndarray:
        """B(x, y) = Id - D(x, y) + Q_x Q_y on V."""
        ex = _is_object(x, y)
        return exact.identity(self.n, ex) - self.D(x, y) + self.Q(x) @ self.Q_dual(y)

    def bergman_dual(self, y, x) -> np.ndarray:
        """B(y, x) on V'."""
        ex = _is_object(x, y)
        return exact.identity(self.n, ex) - self.D_dual(y, x) + self.Q_dual(y) @ self.Q(x)

    def is_quasi_invertible(self, x, y) -> bool:
        try:
            _ensure_quasi_invertible(self.bergman(x, y))
        except NotQuasiInvertible:
            return False
        return True

    def quasi_inverse(self, x, y) -> np.ndarray:
        """x^y = B(x, y)^{-1} (x - Q_x y)."""
        b = self.bergman(x, y)
        _ensure_quasi_invertible(b)
        return solve_operator(b, x - self.Q(x) @ y)

    def quasi_inverse_dual(self, y, x) -> np.ndarray:
        """y^x in V'."""
        b = self.bergman_dual(y, x)
        _ensure_quasi_invertible(b)
        return solve_operator(b, y - self.Q_dual(y) @ x)

    def trace_form(self, x, y):
        return np.trace(self.D(x, y))

    def inner_product(self, x, z):
        """(x | z) = tau(x, z-bar)."""
        return self.trace_form(x, self.bar(z))

    def pairing(self, x, y):
        return np.sum(np.asarray(x) * np.asarray(y))


@dataclass(frozen=True, eq=False)
class RectModel(JordanModel):
    """p x q complex matrices: {x, y, z} = x y z + z y x with y a q x p matrix."""

    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("rect needs p, q >= 1")

    kind = "rect"

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.p * self.q

    @property
    def rank(self) -> int:  # type: ignore[override]
        return min(self.p, self.q)

    @property
    def structure_constant(self) -> int:  # type: ignore[override]
        return self.p + self.q

    @property
    def spec(self) -> str:
        return f"rect:{self.p},{self.q}"

    def as_matrix(self, x) -> np.ndarray:
        return np.asarray(x).reshape(self.p, self.q)

    def as_dual_matrix(self, y) -> np.ndarray:
        return np.asarray(y).reshape(self.p, self.q).T

    def from_matrix(self, m) -> np.ndarray:
        return np.asarray(m).reshape(-1)

    def from_dual_matrix(self, m) -> np.ndarray:
        return np.asarray(m).T.reshape(-1)

    def triple_product(self, x, y, z):
        X, Y, Z = self.as_matrix(x), self.as_dual_matrix(y), self.as_matrix(z)
        return self.from_matrix(X @ Y @ Z + Z @ Y @ X)

    def triple_product_dual(self, y, x, w):
        Y, X, W = self.as_dual_matrix(y), self.as_matrix(x), self.as_dual_matrix(w)
        return self.from_dual_matrix(Y @ X @ W + W @ X @ Y)

    def generic_det(self, x, y):
        X, Y = self.as_matrix(x), self.as_dual_matrix(y)
        if self.p <= self.q:
            prod, size = X @ Y, self.p
        else:
            prod, size = Y @ X, self.q
        if prod.dtype != object:
            return np.linalg.det(np.eye(size) - prod)
        m = [[(1 if i == j else 0) - prod[i, j] for j in range(size)] for i in range(size)]
        return exact.det_division_free(m)

    def unit(self, a: int, b: int, exact_entries: bool = False) -> np.ndarray:
        v = exact.zeros(self.n, exact_entries)
        v[a * self.q + b] = exact.GaussQ(1) if exact_entries else 1.0
        return v

    def frame(self, exact_entries: bool = False) -> list[np.ndarray]:
        return [self.unit(j, j, exact_entries) for j in range(self.rank)]

    def parabolic(self) -> MarkedParabolic:
        return build_marked_parabolic("A", self.p + self.q - 1, self.p)

    def coordinate_roots(self) -> list[tuple[int, ...]]:
        # row a <-> eps_{p-a}, column b <-> eps_{p+1+b} (1-based); reversing the
        # rows puts the cascade on the diagonal
        d = self.p + self.q
        out = []
        for a in range(self.p):
            for b in range(self.q):
                v = [0] * d
                v[self.p - 1 - a] += 1
                v[self.p + b] -= 1
                out.append(tuple(v))
        return out

    def primitive_pieces(self, x):
        X = self.as_matrix(np.asarray(x, dtype=complex))
        U, s, Wh = np.linalg.svd(X)
        return [(float(s[j]), self.from_matrix(np.outer(U[:, j], Wh[j, :]))) for j in range(self.rank)]

    def exact_rank(self, x) -> int:
        return exact.rank(self.as_matrix(x))

    def random_automorphism(self, rng, exact_entries=False):
        if exact_entries:
            U = _cayley(_random_anti_hermitian(rng, self.p))
            W = _cayley(_random_anti_hermitian(rng, self.q))
        else:
            U = _random_unitary(rng, self.p)
            W = _random_unitary(rng, self.q)
        # x -> U x W on matrices, row-major vectorization
        return np.kron(U, W.T)


@dataclass(frozen=True, eq=False)
class SpinModel(JordanModel):
    """The spin factor on C^n in split coordinates.

    The bilinear form is q(x) = x^T S x, with S pairing coordinates
    (0,1), (2,3), ... and fixing the last one when n is odd.  The triple
    product is {x, y, z} = (x.y) z + (z.y) x - (x^T S z) S y, normalized so
    that the standard basis vectors u_0, u_1 form a frame.
    """

    dim: int

    kind = "spin"

    def __post_init__(self):
        if self.dim < 3:
            raise ValueError("spin needs n >= 3")

    @property
    def n(self) -> int:  # type: ignore[override]
        return self.dim

    @property
    def rank(self) -> int:  # type: ignore[override]
        return 2

    @property
    def structure_constant(self) -> int:  # type: ignore[override]
        return self.dim

    @property
    def spec(self) -> str:
        return f"spin:{self.dim}"

    @cached_property
    def partner(self) -> list[int]:
        out = []
        for i in range(self.dim):
            if self.dim % 2 and i == self.dim - 1:
                out.append(i)
            else:
                out.append(i ^ 1)
        return out

    def S(self, v):
        v = np.asarray(v)
        return v[self.partner]

    def quadratic(self, x):
        return np.sum(np.asarray(x) * self.S(x))

    def triple_product(self, x, y, z):
        x, y, z = np.asarray(x), np.asarray(y), np.asarray(z)
        return np.sum(x * y) * z + np.sum(z * y) * x - np.sum(x * self.S(z)) * self.S(y)

    def triple_product_dual(self, y, x, w):
        return self.triple_product(y, x, w)

    def generic_det(self, x, y):
        qx, qy = self.quadratic(x), self.quadratic(y)
        quarter = Fraction(1, 4) if _is_object(x, y) else 0.25
        return 1 - np.sum(np.asarray(x) * np.asarray(y)) + qx * qy * quarter

    def frame(self, exact_entries: bool = False) -> list[np.ndarray]:
        eye = exact.identity(self.dim, exact_entries)
        return [eye[:, 0].copy(), eye[:, 1].copy()]

    def parabolic(self) -> MarkedParabolic:
        if self.dim % 2:
            return build_marked_parabolic("B", (self.dim + 1) // 2, 1)
        return build_marked_parabolic("D", (self.dim + 2) // 2, 1)

    def coordinate_roots(self) -> list[tuple[int, ...]]:
        m = self.dim // 2 + 1
        out = []
        for i in range(self.dim):
            v = [0] * m
            v[0] = 1
            if not (self.dim % 2 and i == self.dim - 1):
                v[i // 2 + 1] = -1 if i % 2 == 0 else 1
            out.append(tuple(v))
        return out

    def _split_pair(self, x):
        """Singular values and tripotents of x, assuming distinct values."""
        x = np.asarray(x, dtype=complex)
        h = float(np.vdot(x, x).real)
        qabs = abs(self.quadratic(x))
        disc = max(h * h - qabs * qabs, 0.0)
        s1 = np.sqrt((h + np.sqrt(disc)) / 2)
        s2 = np.sqrt(max((h - np.sqrt(disc)) / 2, 0.0))
        return s1, s2, x

    def primitive_pieces(self, x):
        x = np.asarray(x, dtype=complex)
        h = float(np.vdot(x, x).real)
        if h == 0:
            c1 = np.zeros(self.dim, complex)
            c1[0] = 1
            return [(0.0, c1), (0.0, self.S(np.conj(c1)))]
        s1, s2, _ = self._split_pair(x)
        cube = self.triple_product(x, np.conj(x), x) / 2
        if s1 - s2 > 1e-8 * s1:
            c1 = (cube - s2 * s2 * x) / (s1 * (s1 * s1 - s2 * s2))
            if s2 > SINGULAR_RTOL * s1:
                c2 = (s1 * s1 * x - cube) / (s2 * (s1 * s1 - s2 * s2))
            else:
                s2 = 0.0
                c2 = self.S(np.conj(c1))
            return [(float(s1), c1), (float(s2), c2)]
        # x / s1 is a maximal tripotent; split it along a self-adjoint element
        e = x / s1
        rng = np.random.default_rng(0)
        for _ in range(16):
            v = rng.normal(size=self.dim) + 1j * rng.normal(size=self.dim)
            qe = self.Q(e)
            hvec = v + qe @ np.conj(v)
            t1, t2, _ = self._split_pair(hvec)
            if t1 - t2 < 1e-3 * t1 or t2 < 1e-3 * t1:
                continue
            (_, a), (_, b) = self.primitive_pieces(hvec)
            for sa in (1, -1):
                for sb in (1, -1):
                    if np.linalg.norm(sa * a + sb * b - e) < 1e-8:
                        return [(float(s1), sa * a), (float(s1), sb * b)]
        raise ArithmeticError("could not split a maximal tripotent")

    def exact_rank(self, x) -> int:
        if all(v == 0 for v in np.asarray(x)):
            return 0
        return 1 if self.quadratic(x) == 0 else 2

    def _random_so_generator(self, rng, exact_entries: bool):
        n = self.dim
        if exact_entries:
            re = rng.integers(-2, 3, size=(n, n))
            im = rng.integers(-2, 3, size=(n, n))
            k0 = np.empty((n, n), dtype=object)
            for i in range(n):
                for j in range(n):
                    k0[i, j] = exact.GaussQ(int(re[i, j] - re[j, i]), int(im[i, j] - im[j, i]))
            half = exact.GaussQ(1) / 2
        else:
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            k0 = a - a.T
            half = 0.5
        sk = np.conjugate(k0)[self.partner][:, self.partner]
        k = (k0 + sk) * half
        return k[self.partner]  # S @ K

    def random_automorphism(self, rng, exact_entries=False):
        gen = self._random_so_generator(rng, exact_entries)
        if exact_entries:
            return _cayley(gen) * exact.GaussQ(3, 4) / 5
        from scipy.linalg import expm

        return np.exp(1j * rng.uniform(0, 2 * np.pi)) * expm(gen * 0.5)


def _random_unitary(rng, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    qmat, rmat = np.linalg.qr(z)
    d = np.diag(rmat)
    return qmat * (d / np.abs(d))


def _random_anti_hermitian(rng, n: int) -> np.ndarray:
    re = rng.integers(-2, 3, size=(n, n))
    im = rng.integers(-2, 3, size=(n, n))
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = exact.GaussQ(int(re[i, j] - re[j, i]), int(im[i, j] + im[j, i]))
    return out


def _cayley(a: np.ndarray) -> np.ndarray:
    """(I - A)(I + A)^{-1}; unitary for anti-Hermitian A."""
    n = a.shape[0]
    eye = exact.identity(n, True)
    return (eye - a) @ exact.inv(eye + a)


_SPEC = re.compile(r"^\s*(rect|spin)\s*:\s*(\d+)\s*(?:,\s*(\d+)\s*)?$")


def parse_model(spec: str) -> JordanModel:
    """Parse ``rect:p,q`` or ``spin:n``."""
    m = _SPEC.match(spec)
    if not m:
        raise ValueError(f"unknown model spec {spec!r} (expected rect:p,q or spin:n)")
    kind, a, b = m.group(1), int(m.group(2)), m.group(3)
    if kind == "rect":
        if b is None:
            raise ValueError("rect needs two parameters, e.g. rect:2,3")
        return RectModel(a, int(b))
    if b is not None:
        raise ValueError("spin takes a single parameter, e.g. spin:5")
    return SpinModel(a)
