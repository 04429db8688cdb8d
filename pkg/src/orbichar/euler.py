"""Euler characteristics of G-sets: plain, orbifold and higher order.

chi^(k) is computed two ways: averaging over pairwise commuting
(k+1)-tuples, and by recursion over conjugacy classes and centralizers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import config
from .groups import FiniteGroup, Subgroup, _bits, centralizer_masks
from .gsets import GSet, fixed_set, induced_gset
from .k0fgr import FgrClass, class_of


def _check_k(k: int) -> None:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k > config.limits().max_k:
        raise ValueError(f"k={k} exceeds the configured maximum {config.limits().max_k}")


def euler_char(X: GSet) -> int:
    return len(X.cells)


def chi_k_tuples(X: GSet, k: int) -> int:
    """(1/|G|) * sum over commuting (k+1)-tuples g of #cells fixed by all g_i."""
    _check_k(k)
    if k < 1:
        raise ValueError("the tuple form needs k >= 1")
    S = X.acting
    members, masks = centralizer_masks(S)
    pos = {x: i for i, x in enumerate(X.cells)}
    fix = []
    for g in members:
        img = X.action.images(g)
        m = 0
        for x, i in pos.items():
            if img[x] == x:
                m |= 1 << i
        fix.append(m)
    memo: dict[tuple, int] = {}

    def count(depth: int, allowed: int, fixed: int) -> int:
        if not fixed:
            return 0
        if depth == 0:
            return bin(fixed).count("1")
        key = (depth, allowed, fixed)
        v = memo.get(key)
        if v is None:
            v = sum(count(depth - 1, allowed & masks[i], fixed & fix[i]) for i in _bits(allowed))
            memo[key] = v
        return v

    total = count(k + 1, (1 << len(members)) - 1, (1 << len(pos)) - 1)
    q, r = divmod(total, S.order)
    if r:
        raise ArithmeticError(f"tuple sum {total} not divisible by |G| = {S.order}")
    return q


def _orbit_count(cells: frozenset, S: Subgroup, images) -> int:
    seen = set()
    n = 0
    members = S.sorted
    for x in sorted(cells):
        if x in seen:
            continue
        n += 1
        for h in members:
            seen.add(images(h)[x])
    return n


def chi_k_recursive(X: GSet, k: int) -> int:
    """chi^(k)(X, G) = sum over [g] of chi^(k-1)(X^g, C_G(g)); chi^(0) counts orbits."""
    _check_k(k)
    images = X.action.images
    memo: dict[tuple, int] = {}

    def rec(cells: frozenset, S: Subgroup, k: int) -> int:
        if not cells:
            return 0
        if k == 0:
            return _orbit_count(cells, S, images)
        key = (cells, S.members, k)
        v = memo.get(key)
        if v is not None:
            return v
        total = 0
        for cls in S.conjugacy_classes():
            g = cls.representative
            img = images(g)
            fixed = frozenset(x for x in cells if img[x] == x)
            if not fixed:
                continue
            if k == 1 and len(fixed) == 1:
                # one cell is one orbit; no need for the centralizer
                total += 1
                continue
            total += rec(fixed, S.centralizer(g), k - 1)
        memo[key] = total
        return total

    return rec(frozenset(X.cells), X.acting, k)


@dataclass
class InductionReport:
    passed: bool
    values: list = field(default_factory=list)
    lemma_checks: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"passed": self.passed, "values": self.values, "fixed_set_checks": self.lemma_checks}


def verify_induction_invariance(Z: GSet, H: FiniteGroup, embedding, kmax: int) -> InductionReport:
    """chi^(k)(ind Z, H) = chi^(k)(Z, G) for k <= kmax by both definitions, plus the
    class-level fixed-set decomposition of the induced set."""
    Z = Z.standalone()
    G = Z.group
    I = induced_gset(Z, H, embedding)
    f = I.action.induced_from[1]
    ok = True
    values = []
    for k in range(kmax + 1):
        row = {"k": k, "recursive": [chi_k_recursive(I, k), chi_k_recursive(Z, k)]}
        good = row["recursive"][0] == row["recursive"][1]
        if k >= 1:
            row["tuples"] = [chi_k_tuples(I, k), chi_k_tuples(Z, k)]
            good = good and row["tuples"][0] == row["tuples"][1] == row["recursive"][0]
        row["passed"] = good
        ok = ok and good
        values.append(row)

    # for each g in G: (ind Z)^g under C_H(g) against the sum over G-classes fusing into [g]_H
    h_class = {}
    for i, c in enumerate(H.conjugacy_classes()):
        for a in c.members:
            h_class[a] = i
    checks = []
    for cls in G.conjugacy_classes():
        g = cls.representative
        lhs = class_of(fixed_set(I, [f[g]]).restrict(H.centralizer(f[g])))
        rhs = FgrClass()
        for other in G.conjugacy_classes():
            g2 = other.representative
            if h_class[f[g2]] == h_class[f[g]]:
                rhs = rhs + class_of(fixed_set(Z, [g2]).restrict(G.centralizer(g2)))
        good = lhs == rhs
        ok = ok and good
        checks.append({"g": g, "lhs": str(lhs), "rhs": str(rhs), "passed": good})
    return InductionReport(ok, values, checks)
