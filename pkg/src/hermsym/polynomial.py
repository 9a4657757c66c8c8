"""Sparse polynomials with exact coefficients, keyed by exponent vectors."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .exact import GaussQ, clear_denominators

Exponent = tuple[int, ...]


def _normalize_coefficient(c):
    if isinstance(c, GaussQ):
        return Fraction(c.re) if c.im == 0 else c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, complex):
        return _normalize_coefficient(GaussQ(c))
    if isinstance(c, float) and c.is_integer():
        return Fraction(int(c))
    raise TypeError(f"inexact coefficient {c!r}")


def _is_scalar(v) -> bool:
    return isinstance(v, (int, Rational, GaussQ, complex))


class ExponentPolynomial:
    """A polynomial in z_1..z_n stored as {exponent vector: coefficient}.

    Coefficients are Fractions, or GaussQ when they have an imaginary part.
    Zero coefficients are never stored.  Instances are immutable.
    """

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Mapping[Exponent, object] | Iterable = ()):
        self.n = n
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, object] = {}
        for exp, c in items:
            exp = tuple(int(e) for e in exp)
            if len(exp) != n or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for {n} variables")
            c = _normalize_coefficient(c)
            acc[exp] = acc[exp] + c if exp in acc else c
        self._terms = {e: c for e, c in acc.items() if c != 0}
        self._hash = None

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "ExponentPolynomial":
        return cls(n)

    @classmethod
    def constant(cls, n: int, c=1) -> "ExponentPolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int) -> "ExponentPolynomial":
        exp = [0] * n
        exp[i] = 1
        return cls(n, {tuple(exp): 1})

    @classmethod
    def variables(cls, n: int) -> list["ExponentPolynomial"]:
        return [cls.variable(n, i) for i in range(n)]

    # -- inspection --------------------------------------------------------
    @property
    def terms(self) -> dict[Exponent, object]:
        return dict(self._terms)

    def support(self) -> list[Exponent]:
        return sorted(self._terms)

    def coefficient(self, exp: Sequence[int]):
        return self._terms.get(tuple(exp), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_rational(self) -> bool:
        return all(not isinstance(c, GaussQ) for c in self._terms.values())

    # -- arithmetic ----------------------------------------------------------
    def _lift(self, other) -> "ExponentPolynomial":
        if isinstance(other, ExponentPolynomial):
            if other.n != self.n:
                raise ValueError("variable counts differ")
            return other
        if _is_scalar(other):
            return ExponentPolynomial.constant(self.n, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ExponentPolynomial(self.n, list(self._terms.items()) + list(o._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return ExponentPolynomial(self.n, {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            c = _normalize_coefficient(other)
            return ExponentPolynomial(self.n, {e: v * c for e, v in self._terms.items()})
        o = self._lift(other)
        if o is NotImplemented:
            return o
        acc: dict[Exponent, object] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in o._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc[e] + c1 * c2 if e in acc else c1 * c2
        return ExponentPolynomial(self.n, acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = ExponentPolynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if _is_scalar(other):
            other = ExponentPolynomial.constant(self.n, other)
        if not isinstance(other, ExponentPolynomial):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and substitution -------------------------------------------
    def derivative(self, i: int) -> "ExponentPolynomial":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return ExponentPolynomial(self.n, out)

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self._terms.items():
            term = c
            for v, k in zip(point, e):
                if k:
                    term = term * v ** k
            total = total + term
        return total

    def restrict(self, keep: Sequence[int]) -> "ExponentPolynomial":
        """Set every variable outside ``keep`` to zero; the result lives in len(keep) variables."""
        keep = list(keep)
        drop = [i for i in range(self.n) if i not in keep]
        out = {}
        for e, c in self._terms.items():
            if all(e[i] == 0 for i in drop):
                out[tuple(e[i] for i in keep)] = c
        return ExponentPolynomial(len(keep), out)

    def scaled_primitive(self) -> "ExponentPolynomial":
        """The rational multiple with coprime integer coefficients, first coefficient positive."""
        if not self or not self.is_rational():
            return self
        keys = sorted(self._terms)
        ints = clear_denominators([self._terms[k] for k in keys])
        if ints[0] < 0:
            ints = [-v for v in ints]
        return ExponentPolynomial(self.n, dict(zip(keys, ints)))

    # -- display -------------------------------------------------------------
    def __repr__(self) -> str:
        return f"ExponentPolynomial({self.n}, {self.format()})"

    def format(self, names: Sequence[str] | None = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"z{i + 1}" for i in range(self.n)]
        parts = []
        for e in sorted(self._terms, key=lambda e: (sum(e), tuple(-v for v in e))):
            c = self._terms[e]
            mono = "*".join(names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")
