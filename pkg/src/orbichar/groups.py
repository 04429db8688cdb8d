"""Explicit finite groups realized as permutation groups.

Every group is stored as a full list of permutations (tuples of images) with
element ids assigned deterministically; element 0 is always the identity.
Permutations compose right to left: ``(a*b)(x) = a(b(x))``.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

from . import config
from .config import SizeBoundError

Perm = tuple


def compose(a: Perm, b: Perm) -> Perm:
    return tuple(map(a.__getitem__, b))


def invert(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def _check_bound(order: int) -> None:
    bound = config.limits().max_group_order
    if order > bound:
        raise SizeBoundError(
            f"group too large: order {order} exceeds bound {bound} (reduce n/N or group size)")


class FiniteGroup:
    """A finite group given by an explicit list of permutations.

    ``kind`` records how the group was built ("permutation", "table",
    "product", "wreath", "twisted", "subgroup"); ``info`` holds the
    structural data for that realization (factors, wreath components...).
    """

    def __init__(self, degree: int, perms: Sequence[Perm], gens: Iterable[int] = (),
                 kind: str = "permutation", info: dict | None = None, name: str | None = None):
        self.degree = degree
        self.perms = list(perms)
        self.index = {p: i for i, p in enumerate(self.perms)}
        if len(self.index) != len(self.perms):
            raise ValueError("duplicate permutations in group element list")
        if self.perms[0] != tuple(range(degree)):
            raise ValueError("element 0 must be the identity")
        self.gens = tuple(gens)
        self.kind = kind
        self.info = info or {}
        self.name = name
        self._table = None

    def __repr__(self):
        label = self.name or self.kind
        return f"<FiniteGroup {label} order={self.order}>"

    def __len__(self):
        return len(self.perms)

    @property
    def order(self) -> int:
        return len(self.perms)

    identity = 0

    def elements(self) -> range:
        return range(len(self.perms))

    def mul(self, a: int, b: int) -> int:
        table = self._table
        if table is None and len(self.perms) <= 256:
            table = self._table = [[-1] * len(self.perms) for _ in self.perms]
        if table is not None:
            v = table[a][b]
            if v < 0:
                v = table[a][b] = self.index[compose(self.perms[a], self.perms[b])]
            return v
        return self.index[compose(self.perms[a], self.perms[b])]

    def inv(self, a: int) -> int:
        return self.index[invert(self.perms[a])]

    def commute(self, a: int, b: int) -> bool:
        pa, pb = self.perms[a], self.perms[b]
        return compose(pa, pb) == compose(pb, pa)

    def element_order(self, a: int) -> int:
        p = self.perms[a]
        result = 1
        seen = [False] * self.degree
        for i in range(self.degree):
            if not seen[i]:
                length = 0
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = p[j]
                    length += 1
                result = result * length // math.gcd(result, length)
        return result

    @cached_property
    def element_orders(self) -> tuple:
        return tuple(self.element_order(a) for a in self.elements())

    @cached_property
    def is_abelian(self) -> bool:
        gens = self.gens or tuple(self.elements())
        return all(self.commute(a, b) for a in gens for b in gens)

    def whole(self) -> "Subgroup":
        w = self.__dict__.get("_whole")
        if w is None:
            w = self.__dict__["_whole"] = Subgroup(self, frozenset(self.elements()))
        return w

    def conjugacy_classes(self) -> list["ConjugacyClass"]:
        return self.whole().conjugacy_classes()

    def centralizer(self, g: int) -> "Subgroup":
        return self.whole().centralizer(g)

    def subgroup_generated(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, closure(self, gens))

    def check_axioms(self, max_exhaustive: int = 24, samples: int = 2000, rng=None) -> bool:
        """Identity and inverse laws on all elements, associativity on all triples
        up to ``max_exhaustive`` elements and on random triples above."""
        n = self.order
        for a in self.elements():
            if self.mul(0, a) != a or self.mul(a, 0) != a:
                return False
            if self.mul(a, self.inv(a)) != 0:
                return False
        if n <= max_exhaustive:
            triples = itertools.product(range(n), repeat=3)
        else:
            import random
            rng = rng or random.Random(0)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        for a, b, c in triples:
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)):
                return False
        return True

    # wreath / product structure

    def wreath_parts(self, a: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """For a wreath product element: ((g_1..g_n) as base ids, sigma as image tuple)."""
        if self.kind != "wreath":
            raise TypeError("not a wreath product")
        return self.info["parts"][a]

    def product_parts(self, a: int) -> tuple[int, int]:
        if self.kind not in ("product", "twisted"):
            raise TypeError("not a direct product")
        return divmod(a, self.info["factors"][1].order)


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: frozenset

    def __len__(self):
        return len(self.members)


class Subgroup:
    """A subgroup of ``parent`` given by its member ids (parent numbering)."""

    def __init__(self, parent: FiniteGroup, members: frozenset):
        self.parent = parent
        self.members = frozenset(members)

    def __repr__(self):
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self.members

    def __iter__(self):
        return iter(self.sorted)

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent and self.members == other.members

    def __hash__(self):
        return hash((id(self.parent), self.members))

    @property
    def order(self) -> int:
        return len(self.members)

    @cached_property
    def sorted(self) -> tuple:
        return tuple(sorted(self.members))

    @property
    def is_whole(self) -> bool:
        return len(self.members) == self.parent.order

    @cached_property
    def gens(self) -> tuple:
        if self.is_whole and self.parent.gens:
            return self.parent.gens
        return generating_set(self.parent, self.sorted)

    @cached_property
    def as_group(self) -> FiniteGroup:
        if self.is_whole:
            return self.parent
        ids = self.sorted
        local = {a: i for i, a in enumerate(ids)}
        return FiniteGroup(self.parent.degree, [self.parent.perms[a] for a in ids],
                           gens=[local[a] for a in self.gens], kind="subgroup",
                           info={"parent": self.parent, "ids": ids})

    def to_local(self, a: int) -> int:
        if self.is_whole:
            return a
        return self.sorted.index(a)

    def conjugacy_classes(self) -> list[ConjugacyClass]:
        cached = self.__dict__.get("_classes")
        if cached is not None:
            return cached
        G = self.parent
        conj = [(G.perms[s], invert(G.perms[s])) for s in self.gens]
        seen = set()
        classes = []
        for x in self.sorted:
            if x in seen:
                continue
            orbit = {x}
            frontier = [x]
            while frontier:
                y = frontier.pop()
                py = G.perms[y]
                for p, pinv in conj:
                    z = G.index[compose(compose(p, py), pinv)]
                    if z not in orbit:
                        orbit.add(z)
                        frontier.append(z)
            seen |= orbit
            classes.append(ConjugacyClass(min(orbit), frozenset(orbit)))
        classes.sort(key=lambda c: c.representative)
        self.__dict__["_classes"] = classes
        return classes

    def centralizer(self, g: int) -> "Subgroup":
        G = self.parent
        pg = G.perms[g]
        members = frozenset(h for h in self.sorted
                            if compose(G.perms[h], pg) == compose(pg, G.perms[h]))
        return Subgroup(G, members)

    def subgroup_generated(self, gens: Iterable[int]) -> "Subgroup":
        gens = list(gens)
        for g in gens:
            if g not in self.members:
                raise ValueError(f"element {g} is not in the subgroup")
        return Subgroup(self.parent, closure(self.parent, gens))

    def normalizer_of(self, other: "Subgroup") -> "Subgroup":
        G = self.parent
        gens = other.gens
        members = set()
        for h in self.sorted:
            hinv = G.inv(h)
            if all(G.mul(G.mul(h, s), hinv) in other.members for s in gens):
                members.add(h)
        return Subgroup(G, frozenset(members))


def closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset:
    gens = [g for g in gens if g != 0]
    members = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = G.mul(x, s)
            if y not in members:
                members.add(y)
                frontier.append(y)
    return frozenset(members)


def generating_set(G: FiniteGroup, members: Sequence[int]) -> tuple:
    """Greedy small generating set: elements of largest order first."""
    candidates = sorted(members, key=lambda a: (-G.element_order(a), a))
    gens: list[int] = []
    span = frozenset({0})
    target = len(set(members))
    for a in candidates:
        if len(span) == target:
            break
        if a not in span:
            gens.append(a)
            span = closure(G, gens)
    return tuple(gens)


# -- constructions ---------------------------------------------------------

def group_from_permutations(degree: int, generators: Iterable[Sequence[int]],
                            name: str | None = None) -> FiniteGroup:
    """Closure of the generators under composition, ids assigned by BFS."""
    if degree < 1:
        raise ValueError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ValueError(f"generator {list(g)} is not a bijection of 0..{degree - 1}")
        gens.append(g)
    bound = config.limits().max_group_order
    identity = tuple(range(degree))
    perms = [identity]
    index = {identity: 0}
    head = 0
    while head < len(perms):
        x = perms[head]
        head += 1
        for s in gens:
            y = compose(x, s)
            if y not in index:
                index[y] = len(perms)
                perms.append(y)
                if len(perms) > bound:
                    _check_bound(len(perms))
    gen_ids = []
    for s in gens:
        i = index[s]
        if i != 0 and i not in gen_ids:
            gen_ids.append(i)
    return FiniteGroup(degree, perms, gen_ids, kind="permutation", name=name)


def group_from_table(mul: Sequence[Sequence[int]], name: str | None = None) -> FiniteGroup:
    """Group from a Cayley table (rows/columns indexed 0..n-1), via the left regular action."""
    n = len(mul)
    if n == 0 or any(len(row) != n for row in mul):
        raise ValueError("multiplication table must be square and non-empty")
    for row in mul:
        for v in row:
            if not 0 <= v < n:
                raise ValueError("multiplication table entries must be element indices")
    ident = [e for e in range(n) if all(mul[e][x] == x and mul[x][e] == x for x in range(n))]
    if len(ident) != 1:
        raise ValueError("multiplication table has no identity")
    e = ident[0]
    for a in range(n):
        if sorted(mul[a]) != list(range(n)):
            raise ValueError("multiplication table rows must be permutations")
        if not any(mul[a][b] == e for b in range(n)):
            raise ValueError(f"element {a} has no inverse")
    if n <= 64:
        triples = itertools.product(range(n), repeat=3)
    else:
        import random
        rng = random.Random(0)
        triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(5000))
    for a, b, c in triples:
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            raise ValueError("multiplication table is not associative")
    perms = [tuple(mul[a]) for a in range(n)]
    G = group_from_permutations(n, perms, name=name)
    G.kind = "table"
    G.info = {"labels": [perms.index(p) for p in G.perms]}
    return G


@lru_cache(maxsize=128)
def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """G x H with id(a, b) = a*|H| + b."""
    _check_bound(G.order * H.order)
    d = G.degree
    shifted = [tuple(d + y for y in q) for q in H.perms]
    perms = [p + q for p in G.perms for q in shifted]
    gens = [a * H.order for a in G.gens] + list(H.gens)
    name = f"{G.name}x{H.name}" if G.name and H.name else None
    return FiniteGroup(d + H.degree, perms, gens, kind="product", info={"factors": (G, H)}, name=name)


@lru_cache(maxsize=128)
def wreath_product(G: FiniteGroup, n: int) -> FiniteGroup:
    """G wr S_n acting on n blocks of G's points.

    ((g), s) * ((g'), s') = ((g_i g'_{s^-1(i)})_i, s s') with s s' applying s' first;
    as a permutation, ((g), s) sends point (i, x) to (s(i), g_{s(i)} x).
    """
    if n < 1:
        raise ValueError("wreath power needs n >= 1")
    _check_bound(G.order ** n * math.factorial(n))
    d = G.degree
    perms = []
    parts = []
    for sigma in itertools.permutations(range(n)):
        for gs in itertools.product(range(G.order), repeat=n):
            p = [0] * (n * d)
            for i in range(n):
                j = sigma[i]
                gp = G.perms[gs[j]]
                base = j * d
                for x in range(d):
                    p[i * d + x] = base + gp[x]
            perms.append(tuple(p))
            parts.append((gs, sigma))
    index = {p: i for i, p in enumerate(perms)}
    ident = tuple(range(n))
    gens = []
    for s in G.gens:
        gs = (s,) + (0,) * (n - 1)
        gens.append(_wreath_id(G, n, gs, ident))
    zero = (0,) * n
    if n >= 2:
        gens.append(_wreath_id(G, n, zero, (1, 0) + tuple(range(2, n))))
    if n >= 3:
        gens.append(_wreath_id(G, n, zero, tuple(range(1, n)) + (0,)))
    name = f"{G.name}wr{n}" if G.name else None
    W = FiniteGroup(n * d, perms, gens, kind="wreath", info={"base": G, "n": n, "parts": parts}, name=name)
    W.index = index
    return W


@lru_cache(maxsize=None)
def _sigma_rank(n: int) -> dict:
    return {s: i for i, s in enumerate(itertools.permutations(range(n)))}


def _wreath_id(G: FiniteGroup, n: int, gs: tuple, sigma: tuple) -> int:
    k = 0
    for g in gs:
        k = k * G.order + g
    return _sigma_rank(n)[sigma] * G.order ** n + k


def wreath_element(W: FiniteGroup, gs: Sequence[int], sigma: Sequence[int]) -> int:
    """Id of ((g_1..g_n), sigma) in a wreath product built by :func:`wreath_product`."""
    return _wreath_id(W.info["base"], W.info["n"], tuple(gs), tuple(sigma))


def twisted_product_group(G: FiniteGroup, parts: Sequence[tuple[FiniteGroup, int]]) -> FiniteGroup:
    """The group acting on (M^{sum k_i} minus diagonal) x prod A_i^{k_i}.

    Realized as the direct product over blocks i (k_i > 0, increasing i) of
    (G x G_i) wr S_{k_i}: each S_{k_i} permutes its block of G-coordinates and
    its block of G_i-coordinates simultaneously.
    """
    total = 1
    for Gi, k in parts:
        if k < 0:
            raise ValueError("block sizes must be nonnegative")
        total *= (G.order * Gi.order) ** k * math.factorial(k)
    _check_bound(total)
    blocks = [wreath_product(direct_product(G, Gi), k) for Gi, k in parts if k > 0]
    if not blocks:
        return trivial_group()
    result = blocks[0]
    for b in blocks[1:]:
        result = direct_product(result, b)
    # products and wreaths are cached, so the twisted group gets its own object
    kind = "twisted" if len(blocks) > 1 else result.kind
    T = FiniteGroup(result.degree, result.perms, result.gens, kind=kind,
                    info=dict(result.info, base=G, blocks=blocks, block_sizes=list(parts)))
    T._table = result._table
    return T


# -- named groups ----------------------------------------------------------

def trivial_group() -> FiniteGroup:
    return named_group("trivial")


def symmetric_group(n: int) -> FiniteGroup:
    return named_group(f"S{n}")


def cyclic_group(n: int) -> FiniteGroup:
    return named_group(f"C{n}")


@lru_cache(maxsize=None)
def named_group(name: str) -> FiniteGroup:
    """Groups by name: trivial, Cn, Sn, Dn (order 2n), V4, Q8, and products "AxB"."""
    if "x" in name and name != "trivial":
        factors = [named_group(f) for f in name.split("x")]
        G = factors[0]
        for F in factors[1:]:
            G = direct_product(G, F)
        named = FiniteGroup(G.degree, G.perms, G.gens, kind=G.kind, info=G.info, name=name)
        return named
    if name in ("trivial", "C1", "S1"):
        return group_from_permutations(1, [], name="trivial")
    if name == "V4":
        return group_from_permutations(4, [(1, 0, 3, 2), (2, 3, 0, 1)], name="V4")
    if name == "Q8":
        # left regular representation of the quaternions 1,i,j,k,-1,-i,-j,-k
        table = _quaternion_table()
        G = group_from_table(table, name="Q8")
        return G
    m = re.fullmatch(r"([CSD])(\d+)", name)
    if not m:
        raise ValueError(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1:
        raise ValueError(f"unknown group name {name!r}")
    if kind == "C":
        return group_from_permutations(n, [tuple(range(1, n)) + (0,)] if n > 1 else [], name=name)
    if kind == "S":
        gens = []
        if n >= 2:
            gens.append((1, 0) + tuple(range(2, n)))
        if n >= 3:
            gens.append(tuple(range(1, n)) + (0,))
        return group_from_permutations(n, gens, name=name)
    # dihedral group of order 2n acting on the vertices of an n-gon
    if n < 3:
        if n == 1:
            return group_from_permutations(2, [(1, 0)], name=name)
        return group_from_permutations(4, [(1, 0, 3, 2), (2, 3, 0, 1)], name=name)
    rotation = tuple((i + 1) % n for i in range(n))
    reflection = tuple((-i) % n for i in range(n))
    return group_from_permutations(n, [rotation, reflection], name=name)


def _quaternion_table():
    # elements encoded as (sign, unit) with unit in 1,i,j,k -> index unit + 4*(sign<0)
    units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    names = ["1", "i", "j", "k"]
    elems = [(s, u) for s in (1, -1) for u in names]
    idx = {e: i for i, e in enumerate(elems)}
    table = []
    for sa, ua in elems:
        row = []
        for sb, ub in elems:
            s, u = units[(ua, ub)]
            row.append(idx[(sa * sb * s, u)])
        table.append(row)
    return table


# -- commuting tuples ------------------------------------------------------

def centralizer_masks(S: Subgroup) -> tuple[list[int], list[int]]:
    """Member list of S and, per member position, a bitmask of commuting members."""
    G = S.parent
    members = list(S.sorted)
    perms = [G.perms[a] for a in members]
    n = len(members)
    masks = [1 << i for i in range(n)]
    for i in range(n):
        pi = perms[i]
        for j in range(i + 1, n):
            pj = perms[j]
            if compose(pi, pj) == compose(pj, pi):
                masks[i] |= 1 << j
                masks[j] |= 1 << i
    return members, masks


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def commuting_tuples(G: FiniteGroup | Subgroup, arity: int,
                     visitor: Callable[[tuple], None] | None = None) -> int:
    """Count (and optionally visit) the pairwise commuting ``arity``-tuples.

    Coordinate i+1 ranges only over the common centralizer of the earlier ones.
    """
    if arity < 1:
        raise ValueError("arity must be positive")
    S = G.whole() if isinstance(G, FiniteGroup) else G
    members, masks = centralizer_masks(S)
    full = (1 << len(members)) - 1

    if visitor is None:
        def count(depth: int, allowed: int) -> int:
            if depth == 1:
                return bin(allowed).count("1")
            return sum(count(depth - 1, allowed & masks[i]) for i in _bits(allowed))
        return count(arity, full)

    total = 0

    def walk(prefix: tuple, allowed: int):
        nonlocal total
        if len(prefix) == arity:
            total += 1
            visitor(prefix)
            return
        for i in _bits(allowed):
            walk(prefix + (members[i],), allowed & masks[i])

    walk((), full)
    return total
