"""Kapranov zeta and configuration series of G-sets, the effective power
structure built from configuration spaces, and Macdonald-type series."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .euler import chi_k_recursive
from .groups import FiniteGroup, symmetric_group, twisted_product_group
from .gsets import (Action, GSet, big_diagonal, big_diagonal_complement, point, product,
                    wreath_power)
from .k0fgr import REGISTRY, FgrClass, class_of
from .series import (FGR, INTEGERS, LambdaStructure, TruncatedSeries, power_standard_int,
                     power_via_lambda, series_from_ints)


def kapranov_zeta_model(Z: GSet, N: int) -> TruncatedSeries:
    """1 + sum_n [(Z^n, G_n)] t^n."""
    coeffs = [FgrClass.one()]
    for n in range(1, N + 1):
        coeffs.append(class_of(wreath_power(Z, n)))
    return TruncatedSeries(FGR, coeffs, N)


def lambda_series_model(Z: GSet, N: int) -> TruncatedSeries:
    """1 + sum_n [(Z^n minus the big G-diagonal, G_n)] t^n."""
    Z = Z.standalone()
    orbits = len(Z.orbit_decomposition)
    coeffs = [FgrClass.one()]
    for n in range(1, N + 1):
        coeffs.append(class_of(big_diagonal_complement(Z, n)) if n <= orbits else FgrClass())
    return TruncatedSeries(FGR, coeffs, N)


def _basis_structure(model, name: str) -> LambdaStructure:
    """Extend (S, d) -> model(point of dim d under S) additively to all classes."""
    memo: dict = {}

    def basis(h: int, d: int, N: int) -> TruncatedSeries:
        key = (h, d, N)
        s = memo.get(key)
        if s is None:
            s = memo[key] = model(point(REGISTRY.group(h), d), N)
        return s

    def gen(a: FgrClass, N: int) -> TruncatedSeries:
        if isinstance(a, int):
            a = FgrClass.one() * a
        out = TruncatedSeries.one(FGR, N)
        for (h, d), c in a.items():
            out = out * (basis(h, d, N) ** c)
        return out

    return LambdaStructure(FGR, gen, name=name)


def fgr_zeta_structure() -> LambdaStructure:
    return _ZETA


def fgr_lambda_structure() -> LambdaStructure:
    return _LAMBDA


_ZETA = _basis_structure(kapranov_zeta_model, "zeta")
_LAMBDA = _basis_structure(lambda_series_model, "lambda")


def _relabel(X: GSet) -> GSet:
    """Standalone copy whose labels are the cell ids."""
    X = X.standalone()
    return GSet(Action(X.group, X.dims, X.action.images, labels=range(len(X))))


def _unfold(label, blocks: int) -> list:
    out = []
    for _ in range(blocks - 1):
        label, last = label
        out.append(last)
    out.append(label)
    return out[::-1]


def effective_power_term(A: Sequence[GSet], M: GSet, part: dict) -> GSet:
    """(M^K minus the G-diagonal) x prod A_i^{k_i} under G_{k_i}, K = sum k_i."""
    M = _relabel(M)
    orbit = M.orbit_of()
    blocks = []
    for i in sorted(part):
        Ai = A[i - 1]
        blocks.append(wreath_power(product(M, Ai), part[i]))
    if not blocks:
        raise ValueError("empty partition")
    X = blocks[0]
    for b in blocks[1:]:
        X = product(X, b)
    keep = []
    for x in range(len(X)):
        ms = [m for block in _unfold(X.label(x), len(blocks)) for (m, _a) in block]
        if len({orbit[m] for m in ms}) == len(ms):
            keep.append(x)
    return X.sub(keep)


def effective_power(A: Sequence[GSet], M: GSet, N: int) -> TruncatedSeries:
    """(1 + [A_1] t + [A_2] t^2 + ...)^[M] for the configuration lambda-structure, by the
    closed geometric formula: one term per {k_i} with sum i k_i = k."""
    from .series import partitions_by_multiplicity
    orbits = len(M.standalone().orbit_decomposition)
    coeffs = [FgrClass.one()]
    for k in range(1, N + 1):
        acc = FgrClass()
        for part in partitions_by_multiplicity(k, max_part=len(A)):
            if sum(part.values()) > orbits:
                continue
            acc = acc + class_of(effective_power_term(A, M, part))
        coeffs.append(acc)
    return TruncatedSeries(FGR, coeffs, N)


def twisted_group_for(A: Sequence[GSet], M: GSet, part: dict) -> FiniteGroup:
    """The acting group of :func:`effective_power_term` built directly."""
    return twisted_product_group(M.standalone().group,
                                 [(A[i - 1].standalone().group, part[i]) for i in sorted(part)])


def series_from_gsets(A: Sequence[GSet], N: int) -> TruncatedSeries:
    return TruncatedSeries(FGR, [FgrClass.one()] + [class_of(a) for a in A], N)


# -- Macdonald-type series ------------------------------------------------------

def _r_tuples(k: int, N: int):
    def rec(prefix: tuple, prod: int):
        if len(prefix) == k:
            yield prefix
            return
        r = 1
        while prod * r <= N:
            yield from rec(prefix + (r,), prod * r)
            r += 1
    yield from rec((), 1)


def macdonald_rhs(chi: int, k: int, N: int) -> TruncatedSeries:
    """prod over r with r_1..r_k <= N of (1 - t^{r_1..r_k})^{r_2 r_3^2 .. r_k^{k-1}}, to the -chi."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        base = series_from_ints([1, -1], N)
    else:
        base = TruncatedSeries.one(INTEGERS, N)
        for r in _r_tuples(k, N):
            size = 1
            exponent = 1
            for j, rj in enumerate(r):
                size *= rj
                exponent *= rj ** j
            factor = [0] * (N + 1)
            factor[0] = 1
            factor[size] -= 1
            base = base * (series_from_ints(factor, N) ** exponent)
    return power_standard_int(base, -chi)


@dataclass
class TamanoiReport:
    k: int
    N: int
    chi: int
    lhs: list
    rhs: list
    passed: bool

    def to_json(self) -> dict:
        return {"k": self.k, "N": self.N, "chi": self.chi, "lhs": self.lhs, "rhs": self.rhs,
                "passed": self.passed}


def verify_tamanoi(X: GSet, k: int, N: int) -> TamanoiReport:
    """chi^(k)(X^n, G_n) against the Macdonald-type product, coefficients 0..N."""
    lhs = [1] + [chi_k_recursive(wreath_power(X, n), k) for n in range(1, N + 1)]
    chi = chi_k_recursive(X, k)
    rhs = list(macdonald_rhs(chi, k, N).coeffs)
    return TamanoiReport(k, N, chi, lhs, rhs, lhs == rhs)


# -- zeta versus lambda power structures -------------------------------------

@dataclass
class DivergenceReport:
    diagonal: FgrClass
    trivial_s2: FgrClass
    differ: bool
    zeta_t2: FgrClass
    lambda_t2: FgrClass
    zeta_t2_effective: bool
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"diagonal_class": self.diagonal.to_json(),
                "trivial_s2_class": self.trivial_s2.to_json(),
                "differ": self.differ,
                "zeta_power_t2": self.zeta_t2.to_json(),
                "lambda_power_t2": self.lambda_t2.to_json(),
                "zeta_power_t2_effective": self.zeta_t2_effective,
                "equality_level": "model",
                "notes": self.notes}


def zeta_lambda_divergence(Z: GSet) -> DivergenceReport:
    """Compare [(Delta_G, G_2)] with [(Z, G x S_2)] (S_2 acting trivially), and
    compute (1 + [pt] t)^[(Z,G)] to t^2 in both power structures."""
    Z = Z.standalone()
    diag = class_of(big_diagonal(Z, 2))
    triv = class_of(product(Z, point(symmetric_group(2))))
    N = 2
    one_plus_t = TruncatedSeries(FGR, [FgrClass.one(), FgrClass.one()], N)
    m = class_of(Z)
    zeta_pow = power_via_lambda(one_plus_t, m, fgr_zeta_structure())
    lam_pow = power_via_lambda(one_plus_t, m, fgr_lambda_structure())
    notes = []
    if diag == triv:
        notes.append("the two t^2 classes coincide for this input")
    return DivergenceReport(diag, triv, diag != triv, zeta_pow.coeffs[2], lam_pow.coeffs[2],
                            zeta_pow.coeffs[2].is_effective(), notes)
