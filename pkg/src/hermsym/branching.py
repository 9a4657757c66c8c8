"""Integral points of the moment polytope and the K-type table of H^0(X, L^k)."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .lie import MarkedParabolic, Weight, dominant_representative, weyl_dimension


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get("HERMSYM_THREADS", "1")))
    except ValueError:
        return 1


def integral_points(k: int, r: int) -> list[tuple[int, ...]]:
    """All m with k >= m_1 >= ... >= m_r >= 0, in lexicographic order."""
    if k < 0 or r < 1:
        raise ValueError("need k >= 0 and r >= 1")

    def extend(prefix: tuple[int, ...], bound: int):
        if len(prefix) == r:
            yield prefix
            return
        for v in range(bound + 1):
            yield from extend(prefix + (v,), v)

    return sorted(extend((), k))


def staircase_vectors(r: int) -> list[tuple[int, ...]]:
    """(0,...,0), (1,0,...,0), ..., (1,...,1)."""
    return [tuple(1 if i < j else 0 for i in range(r)) for j in range(r + 1)]


def is_staircase(m: Sequence[int], k: int) -> bool:
    m = list(m)
    return bool(m) and all(a >= b for a, b in zip(m, m[1:])) and m[0] <= k and m[-1] >= 0


def staircase_decomposition(m: Sequence[int], k: int) -> list[tuple[int, ...]]:
    """Write m as a sum of exactly k staircase 0/1 vectors (m(j) has a 1 where m_i >= j)."""
    if not is_staircase(m, k):
        raise ValueError(f"{tuple(m)} is not a staircase vector for k={k}")
    return [tuple(1 if v >= j else 0 for v in m) for j in range(1, k + 1)]


@dataclass(frozen=True)
class KType:
    m: tuple[int, ...]
    weight: Weight
    dominant: Weight
    dimension: int


@dataclass(frozen=True)
class KTypeTable:
    k: int
    entries: tuple[KType, ...]
    expected_total: int

    @property
    def total(self) -> int:
        return sum(e.dimension for e in self.entries)

    @property
    def ok(self) -> bool:
        return self.total == self.expected_total

    def __len__(self) -> int:
        return len(self.entries)


def _levi_positive(parabolic: MarkedParabolic):
    return parabolic.compact_positive


def ktype_dimension(parabolic: MarkedParabolic, k: int, m: Sequence[int]) -> int:
    """Dimension of the Levi representation with extreme weight k*lambda + sum m_i gamma_i."""
    if len(m) != parabolic.r or not is_staircase(m, k):
        raise ValueError(f"{tuple(m)} is not a staircase vector for k={k}, r={parabolic.r}")
    label = parabolic.gamma_weight(m, k)
    positive = _levi_positive(parabolic)
    if not positive:
        return 1
    return weyl_dimension(positive, dominant_representative(label, positive))


def full_dimension(parabolic: MarkedParabolic, k: int) -> int:
    """dim H^0(X, L^k), the Weyl dimension of k times the marked fundamental weight."""
    rs = parabolic.root_system
    return weyl_dimension(rs.positive_roots, rs.fundamental_weight(parabolic.marked_index) * k)


def _ktype(parabolic: MarkedParabolic, k: int, m: tuple[int, ...]) -> KType:
    label = parabolic.gamma_weight(m, k)
    positive = _levi_positive(parabolic)
    dom = dominant_representative(label, positive) if positive else label
    return KType(m, label, dom, ktype_dimension(parabolic, k, m))


def decompose(parabolic: MarkedParabolic, k: int, workers: int | None = None) -> KTypeTable:
    if k < 1:
        raise ValueError("k must be positive")
    points = integral_points(k, parabolic.r)
    workers = worker_count() if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(lambda m: _ktype(parabolic, k, m), points))
    else:
        entries = [_ktype(parabolic, k, m) for m in points]
    return KTypeTable(k, tuple(entries), full_dimension(parabolic, k))


def is_multiplicity_free(table: KTypeTable) -> bool:
    doms = [e.dominant for e in table.entries]
    return len(set(doms)) == len(doms)
