"""Truncated power series, lambda-structures and the power structures they define."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterator

from .lpoly import LPolynomial


@dataclass(frozen=True)
class Ring:
    """Coefficient ring: elements support +, -, * and == with Python operators."""
    name: str
    zero_fn: Callable[[], Any]
    one_fn: Callable[[], Any]

    @property
    def zero(self):
        return self.zero_fn()

    @property
    def one(self):
        return self.one_fn()

    def from_int(self, n: int):
        return self.one * n


INTEGERS = Ring("Z", lambda: 0, lambda: 1)
RATIONALS = Ring("Q", lambda: Fraction(0), lambda: Fraction(1))
LPOLYNOMIALS = Ring("Z[L^Q]", LPolynomial, lambda: LPolynomial.const(1))


def _fgr_zero():
    from .k0fgr import FgrClass
    return FgrClass()


def _fgr_one():
    from .k0fgr import FgrClass
    return FgrClass.one()


FGR = Ring("K0fGr", _fgr_zero, _fgr_one)


def coefficient_to_json(c):
    if isinstance(c, bool):
        raise TypeError("unexpected boolean coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return str(c) if c.denominator != 1 else c.numerator
    return c.to_json()


class TruncatedSeries:
    """a_0 + a_1 t + ... + a_N t^N over a coefficient ring."""

    __slots__ = ("ring", "N", "coeffs")

    def __init__(self, ring: Ring, coeffs, N: int):
        if N < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = list(coeffs)[:N + 1]
        zero = ring.zero
        cs += [zero] * (N + 1 - len(cs))
        self.ring = ring
        self.N = N
        self.coeffs = tuple(cs)

    @classmethod
    def one(cls, ring: Ring, N: int) -> "TruncatedSeries":
        return cls(ring, [ring.one], N)

    def __getitem__(self, i: int):
        return self.coeffs[i]

    def __len__(self):
        return self.N + 1

    def __iter__(self) -> Iterator:
        return iter(self.coeffs)

    def __repr__(self):
        return f"TruncatedSeries({self.ring.name}, N={self.N}, {list(map(str, self.coeffs))})"

    def _check(self, other: "TruncatedSeries"):
        if self.N != other.N:
            raise ValueError(f"truncation orders differ: {self.N} vs {other.N}")

    def __eq__(self, other):
        return isinstance(other, TruncatedSeries) and self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.N, self.coeffs))

    def __add__(self, other: "TruncatedSeries"):
        self._check(other)
        return TruncatedSeries(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.N)

    def __neg__(self):
        return TruncatedSeries(self.ring, [-a for a in self.coeffs], self.N)

    def __sub__(self, other: "TruncatedSeries"):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.ring, [a * other for a in self.coeffs], self.N)
        self._check(other)
        N = self.N
        a, b = self.coeffs, other.coeffs
        out = []
        for n in range(N + 1):
            acc = self.ring.zero
            for i in range(n + 1):
                if a[i] and b[n - i]:
                    acc = acc + a[i] * b[n - i]
            out.append(acc)
        return TruncatedSeries(self.ring, out, N)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        """Plain integer power (negative powers through :meth:`inverse`)."""
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = TruncatedSeries.one(self.ring, self.N)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "TruncatedSeries":
        if self.coeffs[0] != self.ring.one:
            raise ValueError("only series with constant term 1 are inverted")
        a = self.coeffs
        b = [self.ring.one]
        for n in range(1, self.N + 1):
            acc = self.ring.zero
            for i in range(1, n + 1):
                if a[i] and b[n - i]:
                    acc = acc + a[i] * b[n - i]
            b.append(-acc)
        return TruncatedSeries(self.ring, b, self.N)

    def substitute_power(self, k: int) -> "TruncatedSeries":
        """A(t^k)."""
        if k < 1:
            raise ValueError("substitution exponent must be positive")
        out = [self.ring.zero] * (self.N + 1)
        for i, c in enumerate(self.coeffs):
            if i * k > self.N:
                break
            out[i * k] = c
        return TruncatedSeries(self.ring, out, self.N)

    def negate_variable(self) -> "TruncatedSeries":
        """A(-t)."""
        return TruncatedSeries(self.ring, [c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)], self.N)

    def truncate(self, N: int) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.coeffs, N)

    def is_one_mod(self, k: int) -> bool:
        """True when the series is congruent to 1 modulo t^k."""
        return self.coeffs[0] == self.ring.one and all(not c for c in self.coeffs[1:min(k, self.N + 1)])

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": [coefficient_to_json(c) for c in self.coeffs]}


def series_from_ints(coeffs, N: int) -> TruncatedSeries:
    return TruncatedSeries(INTEGERS, coeffs, N)


def partitions_by_multiplicity(k: int, max_part: int | None = None) -> Iterator[dict]:
    """All {i: k_i} with sum i*k_i = k, in lexicographic order of (k_1, k_2, ...)."""
    max_part = k if max_part is None else min(k, max_part)

    def rec(i: int, remaining: int) -> Iterator[dict]:
        if i > max_part:
            if remaining == 0:
                yield {}
            return
        for ki in range(remaining // i + 1):
            for rest in rec(i + 1, remaining - i * ki):
                out = {i: ki} if ki else {}
                out.update(rest)
                yield out

    yield from rec(1, k)


def power_standard_int(A: TruncatedSeries, m: int) -> TruncatedSeries:
    """(A)^m by the multinomial formula: sum over {k_i} of m(m-1)..(m-K+1)/prod k_i! * prod a_i^k_i."""
    if A.coeffs[0] != A.ring.one:
        raise ValueError("power needs constant term 1")
    m = int(m)
    out = [A.ring.one]
    for k in range(1, A.N + 1):
        acc = A.ring.zero
        for part in partitions_by_multiplicity(k):
            K = sum(part.values())
            falling = 1
            for j in range(K):
                falling *= m - j
            if not falling:
                continue
            denom = 1
            term = A.ring.one
            skip = False
            for i, ki in part.items():
                denom *= math.factorial(ki)
                if not A.coeffs[i]:
                    skip = True
                    break
                for _ in range(ki):
                    term = term * A.coeffs[i]
            if skip:
                continue
            acc = acc + term * (falling // denom)
        out.append(acc)
    return TruncatedSeries(A.ring, out, A.N)


class LambdaStructure:
    """a -> lambda_a(t), additive to multiplicative with lambda_a = 1 + a t + ..."""

    def __init__(self, ring: Ring, generator: Callable[[Any, int], TruncatedSeries], name: str = ""):
        self.ring = ring
        self._generator = generator
        self.name = name
        self._memo: dict = {}

    def __repr__(self):
        return f"<LambdaStructure {self.name} over {self.ring.name}>"

    def __call__(self, a, N: int) -> TruncatedSeries:
        key = (a, N)
        try:
            cached = self._memo.get(key)
        except TypeError:
            cached = None
        if cached is None:
            cached = self._generator(a, N)
            try:
                self._memo[key] = cached
            except TypeError:
                pass
        return cached


@dataclass(frozen=True)
class PowerFactorization:
    b: tuple
    structure: LambdaStructure

    def reconstruct(self, N: int) -> TruncatedSeries:
        return _reconstruct(self, N)


def _lambda_at_power(L: LambdaStructure, b, i: int, N: int) -> TruncatedSeries:
    """lambda_b(t^i) truncated at N."""
    base = L(b, N // i)
    return TruncatedSeries(L.ring, base.coeffs, N).substitute_power(i)


def lambda_factorize(A: TruncatedSeries, L: LambdaStructure) -> PowerFactorization:
    """b_1..b_N with A = prod_i lambda_{b_i}(t^i) mod t^{N+1}."""
    if A.coeffs[0] != A.ring.one:
        raise ValueError("factorization needs constant term 1")
    N = A.N
    rem = A
    bs = []
    for i in range(1, N + 1):
        b = rem.coeffs[i]
        bs.append(b)
        if b:
            rem = rem * _lambda_at_power(L, b, i, N).inverse()
    fac = PowerFactorization(tuple(bs), L)
    if _reconstruct(fac, N) != A:
        raise ArithmeticError("lambda factorization does not reproduce the series")
    return fac


def _reconstruct(fac: PowerFactorization, N: int) -> TruncatedSeries:
    out = TruncatedSeries.one(fac.structure.ring, N)
    for i, b in enumerate(fac.b, start=1):
        if b:
            out = out * _lambda_at_power(fac.structure, b, i, N)
    return out


def power_via_lambda(A: TruncatedSeries, m, L: LambdaStructure) -> TruncatedSeries:
    """(A)^m := prod_i lambda_{m b_i}(t^i)."""
    fac = lambda_factorize(A, L)
    N = A.N
    out = TruncatedSeries.one(L.ring, N)
    for i, b in enumerate(fac.b, start=1):
        mb = m * b
        if mb:
            out = out * _lambda_at_power(L, mb, i, N)
    return out


def opposite_lambda(L: LambdaStructure) -> LambdaStructure:
    """lambda'_a(t) = (lambda_a(-t))^{-1}."""
    inner = L

    def gen(a, N):
        return inner(a, N).negate_variable().inverse()

    opp = LambdaStructure(L.ring, gen, name=f"opposite({L.name})")
    opp.opposite_of = L
    return opp


def generalized_binomial(m: int, n: int) -> int:
    """m(m-1)..(m-n+1)/n! for any integer m."""
    if n < 0:
        return 0
    if m >= 0:
        return math.comb(m, n)
    return (-1) ** n * math.comb(-m + n - 1, n)


def _as_int(a) -> int:
    if isinstance(a, Fraction):
        if a.denominator != 1:
            raise ValueError("this lambda-structure is defined on integers only")
        return a.numerator
    return int(a)


def zeta_structure_int(ring: Ring = INTEGERS) -> LambdaStructure:
    """lambda_m(t) = (1 - t)^{-m} = sum binom(m+n-1, n) t^n."""
    def gen(a, N):
        m = _as_int(a)
        return TruncatedSeries(ring, [ring.from_int(generalized_binomial(m + n - 1, n)) for n in range(N + 1)], N)
    return LambdaStructure(ring, gen, name="zeta")


def configuration_structure_int(ring: Ring = INTEGERS) -> LambdaStructure:
    """lambda_m(t) = (1 + t)^m = sum binom(m, n) t^n."""
    def gen(a, N):
        m = _as_int(a)
        return TruncatedSeries(ring, [ring.from_int(generalized_binomial(m, n)) for n in range(N + 1)], N)
    return LambdaStructure(ring, gen, name="configuration")


def zeta_power_L() -> LambdaStructure:
    """On Z[L^Q]: lambda_{sum c_q L^q}(t) = prod_q (1 - L^q t)^{-c_q}."""
    def gen(a, N):
        if isinstance(a, int):
            a = LPolynomial.const(a)
        out = TruncatedSeries.one(LPOLYNOMIALS, N)
        for q, c in a.items():
            factor = TruncatedSeries(
                LPOLYNOMIALS,
                [LPolynomial({q * n: generalized_binomial(c + n - 1, n)}) for n in range(N + 1)], N)
            out = out * factor
        return out
    return LambdaStructure(LPOLYNOMIALS, gen, name="zeta_L")


# -- power structure axioms ----------------------------------------------------

def check_power_axioms(power: Callable[[TruncatedSeries, Any], TruncatedSeries],
                       A: TruncatedSeries, B: TruncatedSeries, m, n,
                       zero_exp=0, one_exp=1, k: int = 2) -> dict:
    """Evaluate the seven exponential-function properties on one instance."""
    N = A.N
    one = TruncatedSeries.one(A.ring, N)
    results = {
        "1": power(A, zero_exp) == one,
        "2": power(A, one_exp) == A,
        "3": power(A * B, m) == power(A, m) * power(B, m),
        "4": power(A, m + n) == power(A, m) * power(A, n),
        "5": power(A, m * n) == power(power(A, n), m),
        "6": power(A, m).coeffs[1] == m * A.coeffs[1] if N >= 1 else True,
        "7": power(A.substitute_power(k), m) == power(A, m).substitute_power(k),
    }
    return results


def check_finite_determinacy(power, A: TruncatedSeries, m) -> bool:
    """If A = 1 mod t^j then A^m = 1 mod t^j, for every j."""
    P = power(A, m)
    for j in range(1, A.N + 2):
        if A.is_one_mod(j) and not P.is_one_mod(j):
            return False
    return True
