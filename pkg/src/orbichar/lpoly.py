"""Exact elements of Z[L^Q]: finite sums of integer multiples of rational powers of L."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping


def _frac(q) -> Fraction:
    if isinstance(q, str):
        return Fraction(q.strip())
    return Fraction(q)


class LPolynomial:
    """Sum of c_q L^q with q rational, c_q nonzero integers."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Fraction, int] = {}
        for q, c in items:
            if c:
                q = _frac(q)
                acc[q] = acc.get(q, 0) + int(c)
        self.terms = {q: c for q, c in acc.items() if c}
        self._hash = None

    @classmethod
    def const(cls, c: int) -> "LPolynomial":
        return cls({Fraction(0): c})

    @classmethod
    def L(cls, q=1, c: int = 1) -> "LPolynomial":
        return cls({_frac(q): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LPolynomial.const(other)
        return isinstance(other, LPolynomial) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other) -> "LPolynomial":
        if isinstance(other, LPolynomial):
            return other
        if isinstance(other, int):
            return LPolynomial.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for q, c in other.terms.items():
            acc[q] = acc.get(q, 0) + c
        return LPolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return LPolynomial({q: -c for q, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LPolynomial({q: c * other for q, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Fraction, int] = {}
        for q1, c1 in self.terms.items():
            for q2, c2 in other.terms.items():
                q = q1 + q2
                acc[q] = acc.get(q, 0) + c1 * c2
        return LPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                (q, c), = self.terms.items()
                if c in (1, -1):
                    return LPolynomial({q * n: c ** (-n)})
            raise ValueError("only monomials +-L^q are invertible")
        result = LPolynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, q) -> "LPolynomial":
        """Multiply by L^q."""
        q = _frac(q)
        return LPolynomial({e + q: c for e, c in self.terms.items()})

    def euler(self) -> int:
        """Specialization L -> 1 (Euler characteristic of each cell is 1)."""
        return sum(self.terms.values())

    def coefficient(self, q) -> int:
        return self.terms.get(_frac(q), 0)

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def items(self):
        return sorted(self.terms.items())

    def to_json(self) -> list:
        return [{"q": _fmt(q), "c": c} for q, c in self.items()]

    @classmethod
    def from_json(cls, data) -> "LPolynomial":
        if isinstance(data, int):
            return cls.const(data)
        return cls((_frac(t["q"]), int(t["c"])) for t in data)

    def __repr__(self):
        return f"LPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for q, c in self.items():
            if q == 0:
                mono = str(abs(c))
            else:
                power = "L" if q == 1 else f"L^({_fmt(q)})"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


ZERO = LPolynomial()
ONE = LPolynomial.const(1)
