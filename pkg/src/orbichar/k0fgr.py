"""Normal forms in the Grothendieck ring of varieties with finite group actions.

A basis term is (group iso-class, dim): the class of a point with a trivial
action of the group, times L^dim.  Every cell G-set reduces to such terms
orbit by orbit, since a transitive G-set with stabilizer S is induced from a
point with S-action.
"""

from __future__ import annotations

import threading
from typing import Iterable

from . import config
from .config import SizeBoundError
from .groups import (FiniteGroup, commuting_tuples, direct_product, named_group,
                     symmetric_group)
from .gsets import GSet, induced_gset, product
from .isomorphism import GroupIso, are_isomorphic, invariants
from .lpoly import LPolynomial


def _catalogue_names(n: int) -> list[str]:
    """Names of a few familiar groups of order n, tried when labelling a new class."""
    names = []
    if n == 1:
        return ["trivial"]
    names.append(f"C{n}")
    if n == 4:
        names.append("V4")
    for k, f in ((3, 6), (4, 24)):
        if n == f:
            names.append(f"S{k}")
    if n % 2 == 0 and n >= 6:
        names.append(f"D{n // 2}")
    if n == 8:
        names += ["Q8", "C2xC4", "C2xC2xC2"]
    small = ["C2", "C3", "C4", "V4", "S3", "C5", "C6", "D4", "Q8", "C7", "C8"]
    orders = {"C2": 2, "C3": 3, "C4": 4, "V4": 4, "S3": 6, "C5": 5, "C6": 6, "D4": 8,
              "Q8": 8, "C7": 7, "C8": 8}
    for a in small:
        for b in small:
            if orders[a] * orders[b] == n and small.index(a) <= small.index(b):
                names.append(f"{a}x{b}")
    if n == 16:
        names += ["C2xC2xC4", "C2xC2xC2xC2"]
    return list(dict.fromkeys(names))


class GroupRegistry:
    """Pairwise non-isomorphic representatives; handles are list positions."""

    def __init__(self):
        self._lock = threading.RLock()
        self._reps: list[FiniteGroup] = []
        self._labels: list[str] = []
        self._by_invariants: dict[tuple, list[int]] = {}
        self._memo: dict[tuple, int] = {}
        self._products: dict[tuple, int] = {}

    def __len__(self):
        return len(self._reps)

    def group(self, handle: int) -> FiniteGroup:
        return self._reps[handle]

    def label(self, handle: int) -> str:
        return self._labels[handle]

    def order(self, handle: int) -> int:
        return self._reps[handle].order

    def handle(self, G: FiniteGroup) -> int:
        cached = G.__dict__.get("_registry_handle")
        if cached is not None and cached[0] is self:
            return cached[1]
        key = (G.degree, frozenset(G.perms))
        with self._lock:
            h = self._memo.get(key)
            if h is None:
                h = self._lookup(G)
                self._memo[key] = h
        G.__dict__["_registry_handle"] = (self, h)
        return h

    def _lookup(self, G: FiniteGroup) -> int:
        if G.order > config.limits().max_iso_order:
            raise SizeBoundError(
                f"isomorphism test out of range: order {G.order} exceeds bound "
                f"{config.limits().max_iso_order}")
        inv = invariants(G)
        for h in self._by_invariants.get(inv, ()):
            if are_isomorphic(G, self._reps[h]) is not None:
                return h
        h = len(self._reps)
        self._reps.append(G)
        self._labels.append(self._new_label(G, inv))
        self._by_invariants.setdefault(inv, []).append(h)
        return h

    def _new_label(self, G: FiniteGroup, inv: tuple) -> str:
        for name in _catalogue_names(G.order):
            C = named_group(name)
            if invariants(C) == inv and are_isomorphic(G, C) is not None:
                return name
        same_order = sum(1 for R in self._reps if R.order == G.order)
        return f"G{G.order}#{same_order}"

    def iso_to_rep(self, G: FiniteGroup) -> GroupIso:
        """An isomorphism from G onto its registry representative."""
        rep = self._reps[self.handle(G)]
        if rep is G:
            return GroupIso(G, G, tuple(G.elements()))
        iso = are_isomorphic(G, rep)
        assert iso is not None
        return iso

    def product_handle(self, a: int, b: int) -> int:
        key = (a, b) if a <= b else (b, a)
        with self._lock:
            h = self._products.get(key)
        if h is None:
            h = self.handle(direct_product(self._reps[key[0]], self._reps[key[1]]))
            with self._lock:
                self._products[key] = h
        return h


REGISTRY = GroupRegistry()


def group_handle(G: FiniteGroup) -> int:
    return REGISTRY.handle(G)


class FgrClass:
    """Integer combination of basis terms (group handle, dim)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[tuple, int] = {}
        for key, c in items:
            if c:
                h, d = key
                if d < 0:
                    raise ValueError("dimensions must be nonnegative")
                acc[(h, d)] = acc.get((h, d), 0) + c
        self.terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def point(cls, G: FiniteGroup, dim: int = 0, coeff: int = 1) -> "FgrClass":
        return cls({(group_handle(G), dim): coeff})

    @classmethod
    def one(cls) -> "FgrClass":
        return cls.point(named_group("trivial"))

    @classmethod
    def zero(cls) -> "FgrClass":
        return cls()

    @classmethod
    def L(cls, d: int = 1) -> "FgrClass":
        return cls.point(named_group("trivial"), d)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = FgrClass.one() * other
        return isinstance(other, FgrClass) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, FgrClass):
            return other
        if isinstance(other, int):
            return FgrClass.one() * other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return FgrClass(acc)

    __radd__ = __add__

    def __neg__(self):
        return FgrClass({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return FgrClass({k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[tuple, int] = {}
        for (h1, d1), c1 in self.terms.items():
            for (h2, d2), c2 in other.terms.items():
                key = (REGISTRY.product_handle(h1, h2), d1 + d2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return FgrClass(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = FgrClass.one()
        for _ in range(n):
            result = result * self
        return result

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def items(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: _sort_key(kv[0]))

    def to_json(self) -> list:
        from .descriptors import group_to_json
        out = []
        for (h, d), c in self.items():
            G = REGISTRY.group(h)
            label = REGISTRY.label(h)
            group = label if _is_catalogue(label) else group_to_json(G)
            out.append({"group": group, "dim": d, "coeff": c})
        return out

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> "FgrClass":
        from .descriptors import parse_group
        acc = FgrClass()
        for term in data:
            G = parse_group(term["group"])
            acc = acc + cls.point(G, int(term.get("dim", 0)), int(term.get("coeff", 1)))
        return acc

    def __repr__(self):
        return f"FgrClass({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (h, d), c in self.items():
            mono = f"[{REGISTRY.label(h)}]"
            if d:
                mono += "*L" if d == 1 else f"*L^{d}"
            if abs(c) != 1:
                mono = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+", mono))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


def _sort_key(key: tuple) -> tuple:
    h, d = key
    return (REGISTRY.order(h), REGISTRY.label(h), d)


def _is_catalogue(label: str) -> bool:
    return not label.startswith("G")


# -- maps -------------------------------------------------------------------

def class_of(X: GSet) -> FgrClass:
    """Sum over orbits of (stabilizer iso-class, dim)."""
    acc: dict[tuple, int] = {}
    for orb in X.orbit_decomposition.orbits:
        key = (group_handle(orb.stabilizer.as_group), orb.dim)
        acc[key] = acc.get(key, 0) + 1
    return FgrClass(acc)


def map_i(c) -> FgrClass:
    """[Z] -> [(Z, {e})] for a plain class given as int, LPolynomial or trivial-supported FgrClass."""
    if isinstance(c, FgrClass):
        triv = group_handle(named_group("trivial"))
        if any(h != triv for h, _ in c.terms):
            raise ValueError("map_i expects a class supported on the trivial group")
        return c
    if isinstance(c, int):
        return FgrClass.one() * c
    acc = FgrClass()
    for q, coeff in c.terms.items():
        if q.denominator != 1 or q < 0:
            raise ValueError("map_i needs nonnegative integer L-exponents")
        acc = acc + FgrClass.L(int(q)) * coeff
    return acc


def map_p(a: FgrClass) -> FgrClass:
    """[(Z, G)] -> [Z/G]: every (S, d) becomes (trivial, d)."""
    triv = group_handle(named_group("trivial"))
    acc: dict[tuple, int] = {}
    for (h, d), c in a.terms.items():
        acc[(triv, d)] = acc.get((triv, d), 0) + c
    return FgrClass(acc)


def to_lpolynomial(a: FgrClass) -> LPolynomial:
    """Image of p(a) as a polynomial in L."""
    return LPolynomial({d: c for (_, d), c in map_p(a).terms.items()}) if a.terms else LPolynomial()


def gp_box(X: GSet, Y: GSet) -> GSet:
    """ind from S_m x S_n to S_{m+n} of X x Y."""
    X, Y = X.standalone(), Y.standalone()
    m, n = _symmetric_degree(X.group), _symmetric_degree(Y.group)
    P = product(X, Y)
    S = symmetric_group(m + n)
    embedding = [S.index[p] for p in P.group.perms]
    return induced_gset(P, S, embedding)


def _symmetric_degree(G: FiniteGroup) -> int:
    for m in range(1, 9):
        S = symmetric_group(m)
        if G is S or (G.degree == S.degree and G.order == S.order and set(G.perms) == set(S.perms)):
            return m
        if S.order > G.order:
            break
    raise ValueError("gp_box needs the permutation realizations of symmetric groups")


_chi_cache: dict[tuple, int] = {}
_chi_lock = threading.Lock()


def chi_k_point(handle: int, k: int) -> int:
    """chi^(k)(pt, S) = #commuting (k+1)-tuples / |S|."""
    key = (handle, k)
    with _chi_lock:
        v = _chi_cache.get(key)
    if v is None:
        G = REGISTRY.group(handle)
        if k == 0:
            v = 1
        else:
            total = commuting_tuples(G, k + 1)
            v, r = divmod(total, G.order)
            if r:
                raise ArithmeticError("commuting tuple count not divisible by group order")
        with _chi_lock:
            _chi_cache[key] = v
    return v


def chi_k_class(a: FgrClass, k: int) -> int:
    """Linear extension of (S, d) -> chi^(k)(pt, S)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return sum(c * chi_k_point(h, k) for (h, _), c in a.terms.items())
