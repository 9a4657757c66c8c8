"""Exact scalars and linear algebra.

Gaussian rationals are kept as pairs of ``gmpy2.mpq`` rationals, which
compare and mix freely with :class:`fractions.Fraction`.  The
matrix routines work on numpy object arrays (or nested lists) whose entries
support ``+ - * /`` and comparison with zero, so they serve both ``Fraction``
and :class:`GaussQ` entries.  Integer matrices go through a fraction-free
(Bareiss) elimination that never leaves the integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq


class GaussQ:
    """An element of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, GaussQ):
            re, im = re.re, re.im + Fraction(im)
        elif isinstance(re, complex):
            re, im = mpq(re.real), mpq(re.imag) + mpq(im)
        self.re = mpq(re)
        self.im = mpq(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussQ):
            return other
        if isinstance(other, (int, Rational)):
            return GaussQ(other)
        if isinstance(other, complex):
            return GaussQ(other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussQ(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            return GaussQ(self.re * other, self.im * other)
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussQ(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return GaussQ(1) / (self ** (-k))
        out = GaussQ(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussQ(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussQ({self.re})"
        return f"GaussQ({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def gq(re=0, im=0) -> GaussQ:
    return GaussQ(re, im)


def to_exact(a) -> np.ndarray:
    """Convert an array of ints, Fractions or integral-valued complex numbers to GaussQ entries."""
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = v if isinstance(v, GaussQ) else GaussQ(v)
    return out


def to_complex(a) -> np.ndarray:
    arr = np.asarray(a, dtype=object)
    out = np.empty(arr.shape, dtype=complex)
    for idx, v in np.ndenumerate(arr):
        out[idx] = complex(v)
    return out


def is_exact(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def is_zero(v) -> bool:
    return v == 0


def identity(n: int, exact: bool = False) -> np.ndarray:
    if not exact:
        return np.eye(n, dtype=complex)
    out = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(n):
            out[i, j] = GaussQ(1 if i == j else 0)
    return out


def zeros(n: int, exact: bool = False) -> np.ndarray:
    if not exact:
        return np.zeros(n, dtype=complex)
    out = np.empty(n, dtype=object)
    for i in range(n):
        out[i] = GaussQ(0)
    return out


def _rref(mat, rhs_cols: int = 0):
    """Gauss-Jordan over a field.  Returns (reduced rows, pivot columns)."""
    rows = [list(r) for r in mat]
    if not rows:
        return rows, []
    ncols = len(rows[0]) - rhs_cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not is_zero(rows[i][c]):
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c] if not isinstance(rows[r][c], int) else Fraction(1, rows[r][c])
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(mat) -> int:
    rows = [list(r) for r in mat]
    if rows and all(isinstance(v, int) for row in rows for v in row):
        return len(bareiss_echelon(rows)[1])
    return len(_rref(rows)[1])


def solve(mat, rhs) -> np.ndarray:
    """Solve ``mat @ X = rhs`` exactly for square invertible ``mat``."""
    m = np.asarray(mat, dtype=object)
    b = np.asarray(rhs, dtype=object)
    vec = b.ndim == 1
    if vec:
        b = b.reshape(-1, 1)
    n = m.shape[0]
    aug = [list(m[i]) + list(b[i]) for i in range(n)]
    red, piv = _rref(aug, rhs_cols=b.shape[1])
    if len(piv) < n:
        raise ZeroDivisionError("singular matrix")
    out = np.array([row[n:] for row in red[:n]], dtype=object)
    return out.reshape(-1) if vec else out


def inv(mat) -> np.ndarray:
    m = np.asarray(mat, dtype=object)
    n = m.shape[0]
    eye = [[GaussQ(1) if i == j else GaussQ(0) for j in range(n)] for i in range(n)]
    return solve(m, np.array(eye, dtype=object))


def det(mat):
    """Determinant by elimination over a field."""
    rows = [list(r) for r in np.asarray(mat, dtype=object)]
    n = len(rows)
    out = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if not is_zero(rows[i][c])), None)
        if piv is None:
            return 0 * out
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            out = -out
        out = out * rows[c][c]
        for i in range(c + 1, n):
            if not is_zero(rows[i][c]):
                f = Fraction(rows[i][c], rows[c][c]) if isinstance(rows[c][c], int) else rows[i][c] / rows[c][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return out


def det_division_free(mat):
    """Laplace expansion; usable for entries from a ring (e.g. polynomials)."""
    m = [list(r) for r in mat]
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = None
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det_division_free(minor)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total


def nullspace(mat, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel of ``mat`` over its field of fractions."""
    rows = [list(r) for r in mat]
    if not rows:
        if ncols is None:
            raise ValueError("column count needed for an empty matrix")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(rows[0])
    if all(isinstance(v, int) for row in rows for v in row):
        ech, piv = bareiss_echelon(rows)
        red, piv = _rref([[Fraction(v) for v in row] for row in ech])
    else:
        red, piv = _rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def bareiss_echelon(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix.

    Returns the nonzero echelon rows and their pivot columns.  All
    intermediate quantities are integers (Bareiss' exact division).
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    nrows, ncols = len(m), len(m[0])
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pr = m[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f == 0:
                m[i] = [(pv * a) // prev for a in row] if prev != 1 else [pv * a for a in row]
                continue
            m[i] = [(pv * a - f * b) // prev for a, b in zip(row, pr)]
        prev = pv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def clear_denominators(row: Iterable) -> list[int]:
    """Scale a rational row to a primitive integer row."""
    vals = [Fraction(v) for v in row]
    den = math.lcm(*(v.denominator for v in vals)) if vals else 1
    ints = [int(v * den) for v in vals]
    g = math.gcd(*ints) if ints else 0
    if g > 1:
        ints = [v // g for v in ints]
    return ints
