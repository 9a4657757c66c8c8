"""Root systems, Hermitian markings and Weyl dimensions.

Everything here is exact.  Roots live in the usual epsilon coordinates of
each classical series; for type A the ambient space is the trace-zero
hyperplane and weights are projected onto it so that equality of weights is
plain tuple equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import exact

Vector = tuple[Fraction, ...]


def _vec(values: Iterable) -> Vector:
    return tuple(Fraction(v) for v in values)


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class Weight:
    """A rational vector in epsilon coordinates."""

    coords: Vector

    def __post_init__(self):
        object.__setattr__(self, "coords", _vec(self.coords))

    def __add__(self, other: "Weight | Sequence") -> "Weight":
        o = other.coords if isinstance(other, Weight) else _vec(other)
        return Weight(tuple(a + b for a, b in zip(self.coords, o)))

    def __sub__(self, other: "Weight | Sequence") -> "Weight":
        o = other.coords if isinstance(other, Weight) else _vec(other)
        return Weight(tuple(a - b for a, b in zip(self.coords, o)))

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.coords))

    def __mul__(self, k) -> "Weight":
        return Weight(tuple(a * k for a in self.coords))

    __rmul__ = __mul__

    def pair(self, root: Sequence) -> Fraction:
        """Coroot pairing <self, root^vee>."""
        return 2 * dot(self.coords, root) / dot(root, root)

    def as_floats(self) -> list[float]:
        return [float(c) for c in self.coords]

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class RootSystem:
    cartan_type: str
    rank: int
    simple_roots: tuple[tuple[int, ...], ...]
    positive_roots: tuple[tuple[int, ...], ...]

    @property
    def ambient_dim(self) -> int:
        return len(self.simple_roots[0])

    def normalize(self, vec: Sequence) -> Vector:
        v = _vec(vec)
        if self.cartan_type == "A":
            mean = sum(v, Fraction(0)) / len(v)
            v = tuple(a - mean for a in v)
        return v

    def weight(self, vec: Sequence) -> Weight:
        return Weight(self.normalize(vec))

    @cached_property
    def _coord_table(self) -> dict[tuple[int, ...], tuple[int, ...]]:
        return {a: self._solve_coords(a) for a in self.positive_roots}

    def _solve_coords(self, vec: Sequence) -> tuple[int, ...]:
        # least-squares free: simple roots are independent, pick a full-rank row subset
        cols = [[Fraction(b[i]) for b in self.simple_roots] for i in range(self.ambient_dim)]
        aug = [row + [Fraction(vec[i])] for i, row in enumerate(cols)]
        red, piv = exact._rref(aug, rhs_cols=1)
        if len(piv) < self.rank:
            raise ValueError("simple roots are dependent")
        for row in red[len(piv):]:
            if row[-1] != 0:
                raise ValueError(f"{vec} is not in the root span")
        out = [Fraction(0)] * self.rank
        for i, p in enumerate(piv):
            out[p] = red[i][-1]
        if any(c.denominator != 1 for c in out):
            raise ValueError(f"{vec} is not in the root lattice")
        return tuple(int(c) for c in out)

    def simple_coords(self, root: Sequence[int]) -> tuple[int, ...]:
        """Coefficients of a root in the simple-root basis."""
        key = tuple(int(c) for c in root)
        if key in self._coord_table:
            return self._coord_table[key]
        neg = tuple(-c for c in key)
        if neg in self._coord_table:
            return tuple(-c for c in self._coord_table[neg])
        return self._solve_coords(key)

    @cached_property
    def roots(self) -> frozenset[tuple[int, ...]]:
        neg = {tuple(-c for c in a) for a in self.positive_roots}
        return frozenset(set(self.positive_roots) | neg)

    def is_root(self, vec: Sequence) -> bool:
        try:
            key = tuple(int(c) for c in vec)
        except (TypeError, ValueError):
            return False
        if any(Fraction(c) != k for c, k in zip(vec, key)):
            return False
        return key in self.roots

    @cached_property
    def rho(self) -> Weight:
        total = [Fraction(0)] * self.ambient_dim
        for a in self.positive_roots:
            total = [t + c for t, c in zip(total, a)]
        return Weight(tuple(t / 2 for t in total))

    def fundamental_weight(self, index: int) -> Weight:
        """The fundamental weight of simple root ``index`` (1-based)."""
        s = self.rank
        cartan = [
            [Weight(self.simple_roots[k]).pair(self.simple_roots[j]) for j in range(s)]
            for k in range(s)
        ]
        # row i of cartan^{-1} gives the simple-root expansion of the i-th weight
        inv = exact.solve(cartan, [[Fraction(int(i == j)) for j in range(s)] for i in range(s)])
        coeffs = [Fraction(c) for c in inv[index - 1]]
        vec = [Fraction(0)] * self.ambient_dim
        for c, b in zip(coeffs, self.simple_roots):
            vec = [v + c * x for v, x in zip(vec, b)]
        return Weight(self.normalize(vec))


def _simple_roots(cartan_type: str, s: int) -> list[tuple[int, ...]]:
    def e(i: int, d: int) -> list[int]:
        v = [0] * d
        v[i] = 1
        return v

    if cartan_type == "A":
        if s < 1:
            raise ValueError("A_s needs s >= 1")
        d = s + 1
        return [tuple(a - b for a, b in zip(e(i, d), e(i + 1, d))) for i in range(s)]
    if cartan_type in ("B", "C", "D"):
        if cartan_type == "D" and s < 3:
            raise ValueError("D_s needs s >= 3")
        if s < 2:
            raise ValueError(f"{cartan_type}_s needs s >= 2")
        out = [tuple(a - b for a, b in zip(e(i, s), e(i + 1, s))) for i in range(s - 1)]
        if cartan_type == "B":
            out.append(tuple(e(s - 1, s)))
        elif cartan_type == "C":
            out.append(tuple(2 * c for c in e(s - 1, s)))
        else:
            out.append(tuple(a + b for a, b in zip(e(s - 2, s), e(s - 1, s))))
        return out
    raise ValueError(f"unsupported Cartan type {cartan_type!r}")


def _reflect(alpha: Sequence[int], beta: Sequence[int]) -> tuple[int, ...]:
    n = 2 * dot(alpha, beta) / dot(beta, beta)
    return tuple(int(a - n * b) for a, b in zip(alpha, beta))


def reflection_closure(simple: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Positive roots generated from the simple roots by simple reflections."""
    simple = [tuple(b) for b in simple]
    found = set(simple)
    queue = list(simple)
    while queue:
        a = queue.pop()
        for b in simple:
            if a == b:
                continue
            c = _reflect(a, b)
            if c not in found:
                found.add(c)
                queue.append(c)
    return sorted(found)


@lru_cache(maxsize=None)
def root_system(cartan_type: str, rank: int) -> RootSystem:
    cartan_type = cartan_type.upper()
    simple = _simple_roots(cartan_type, rank)
    positive = reflection_closure(simple)
    rs = RootSystem(cartan_type, rank, tuple(simple), ())
    height = {a: sum(rs._solve_coords(a)) for a in positive}
    positive.sort(key=lambda a: (height[a], rs._solve_coords(a)))
    return RootSystem(cartan_type, rank, tuple(simple), tuple(positive))


@dataclass(frozen=True)
class MarkedParabolic:
    """Root data of a Hermitian maximal parabolic."""

    root_system: RootSystem
    marked_index: int
    compact_positive: tuple[tuple[int, ...], ...]
    noncompact_roots: tuple[tuple[int, ...], ...]
    gammas: tuple[tuple[int, ...], ...]
    lam: Weight = field(compare=False)

    @property
    def r(self) -> int:
        return len(self.gammas)

    @property
    def n(self) -> int:
        return len(self.noncompact_roots)

    @property
    def marked_root(self) -> tuple[int, ...]:
        return self.root_system.simple_roots[self.marked_index - 1]

    @property
    def levi_simple(self) -> tuple[tuple[int, ...], ...]:
        return tuple(
            b for i, b in enumerate(self.root_system.simple_roots) if i != self.marked_index - 1
        )

    def lex_key(self, root: Sequence[int]) -> tuple[int, ...]:
        return lex_key(self.root_system, self.marked_index, root)

    def lambda_vertices(self, k: int = 1) -> list[Weight]:
        """k times the vertices lambda + gamma_1 + ... + gamma_j, j = 0..r."""
        out = [self.lam]
        for g in self.gammas:
            out.append(out[-1] + g)
        return [w * k for w in out]

    def gamma_weight(self, m: Sequence[int], k: int = 1) -> Weight:
        w = self.lam * k
        for mi, g in zip(m, self.gammas):
            w = w + Weight(g) * mi
        return w

    def describe(self) -> str:
        return f"{self.root_system.cartan_type}{self.root_system.rank} node {self.marked_index}"


def lex_key(rs: RootSystem, marked_index: int, root: Sequence[int]) -> tuple[int, ...]:
    c = rs.simple_coords(root)
    m = marked_index - 1
    return (c[m],) + c[:m] + c[m + 1:]


def strongly_orthogonal(rs: RootSystem, a: Sequence[int], b: Sequence[int]) -> bool:
    s = tuple(x + y for x, y in zip(a, b))
    d = tuple(x - y for x, y in zip(a, b))
    return not rs.is_root(s) and not rs.is_root(d)


def strongly_orthogonal_cascade(
    rs: RootSystem, marked_index: int, candidates: Sequence[tuple[int, ...]] | None = None
) -> list[tuple[int, ...]]:
    """Greedy cascade: start at the marked root, keep taking the lex-smallest
    noncompact root strongly orthogonal to everything chosen so far."""
    if candidates is None:
        m = marked_index - 1
        candidates = [a for a in rs.positive_roots if rs.simple_coords(a)[m] == 1]
    ordered = sorted(candidates, key=lambda a: lex_key(rs, marked_index, a))
    chosen: list[tuple[int, ...]] = []
    for a in ordered:
        if a in chosen:
            continue
        if all(strongly_orthogonal(rs, g, a) for g in chosen):
            chosen.append(a)
    return chosen


@lru_cache(maxsize=None)
def build_marked_parabolic(cartan_type: str, rank: int, marked_index: int) -> MarkedParabolic:
    rs = root_system(cartan_type, rank)
    if not 1 <= marked_index <= rank:
        raise ValueError(f"marked index {marked_index} out of range 1..{rank}")
    m = marked_index - 1
    coeff = {a: rs.simple_coords(a)[m] for a in rs.positive_roots}
    bad = [a for a, c in coeff.items() if c > 1]
    if bad:
        raise ValueError(
            f"node {marked_index} of {cartan_type}{rank} is not Hermitian: "
            f"root {bad[0]} has multiplicity {coeff[bad[0]]}"
        )
    compact = tuple(a for a in rs.positive_roots if coeff[a] == 0)
    noncompact = [a for a in rs.positive_roots if coeff[a] == 1]
    gammas = strongly_orthogonal_cascade(rs, marked_index, noncompact)
    rest = sorted((a for a in noncompact if a not in gammas), key=lambda a: lex_key(rs, marked_index, a))
    lam = -rs.fundamental_weight(marked_index)
    return MarkedParabolic(
        root_system=rs,
        marked_index=marked_index,
        compact_positive=compact,
        noncompact_roots=tuple(gammas) + tuple(rest),
        gammas=tuple(gammas),
        lam=lam,
    )


def simple_system(positive: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Indecomposable elements of a positive system."""
    pos = [tuple(a) for a in positive]
    sums = {tuple(x + y for x, y in zip(a, b)) for i, a in enumerate(pos) for b in pos[i + 1:]}
    return [a for a in pos if a not in sums]


def is_dominant(weight: Weight, positive: Sequence[Sequence[int]]) -> bool:
    return all(dot(weight.coords, a) >= 0 for a in positive)


def dominant_representative(weight: Weight, positive: Sequence[Sequence[int]]) -> Weight:
    """The dominant element of the Weyl orbit, by repeated simple reflections."""
    simple = simple_system(positive)
    w = weight
    while True:
        for b in simple:
            if dot(w.coords, b) < 0:
                w = w - Weight(b) * w.pair(b)
                break
        else:
            return w


def weyl_dimension(positive: Sequence[Sequence[int]], highest_weight: Weight) -> int:
    """Weyl's dimension product over the given positive system."""
    if not is_dominant(highest_weight, positive):
        raise ValueError(f"weight {highest_weight} is not dominant")
    half = [Fraction(0)] * len(highest_weight.coords)
    for a in positive:
        half = [h + Fraction(c, 2) for h, c in zip(half, a)]
    num = Fraction(1)
    for a in positive:
        num *= (dot(highest_weight.coords, a) + dot(half, a)) / dot(half, a)
    if num.denominator != 1:
        raise ArithmeticError(f"non-integral Weyl product {num}")
    return int(num)
