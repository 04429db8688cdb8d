"""Isomorphism and embedding search for small groups."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from . import config
from .config import SizeBoundError
from .groups import FiniteGroup, generating_set


@dataclass(frozen=True)
class GroupIso:
    """An injective homomorphism ``source -> target`` (a bijection when orders agree)."""
    source: FiniteGroup
    target: FiniteGroup
    map: tuple

    def __call__(self, a: int) -> int:
        return self.map[a]

    def verify(self) -> bool:
        G, H, f = self.source, self.target, self.map
        if len(set(f)) != G.order:
            return False
        return all(f[G.mul(a, b)] == H.mul(f[a], f[b]) for a in G.elements() for b in G.elements())

    def inverse(self) -> "GroupIso":
        if self.source.order != self.target.order:
            raise ValueError("only bijections can be inverted")
        inv = [0] * self.target.order
        for a, b in enumerate(self.map):
            inv[b] = a
        return GroupIso(self.target, self.source, tuple(inv))


def invariants(G: FiniteGroup) -> tuple:
    """Order, abelianness, center size, element-order and class-size histograms."""
    cached = G.__dict__.get("_invariants")
    if cached is not None:
        return cached
    classes = G.conjugacy_classes()
    center = sum(1 for c in classes if len(c) == 1)
    orders = Counter(G.element_orders)
    # (element order, class size) pairs refine both histograms
    joint = Counter((G.element_orders[c.representative], len(c)) for c in classes)
    inv = (G.order, G.is_abelian, center,
           tuple(sorted(orders.items())), tuple(sorted(joint.items())))
    G.__dict__["_invariants"] = inv
    return inv


def _class_sizes(G: FiniteGroup) -> list[int]:
    cached = G.__dict__.get("_class_size_of")
    if cached is None:
        cached = [0] * G.order
        for c in G.conjugacy_classes():
            for a in c.members:
                cached[a] = len(c)
        G.__dict__["_class_size_of"] = cached
    return cached


def _homomorphisms(G: FiniteGroup, H: FiniteGroup, bijective: bool) -> Iterator[tuple]:
    """Injective homomorphisms G -> H (bijective if requested), by backtracking
    on images of a small generating set with Cayley-graph consistency checks."""
    gens = G.__dict__.get("_iso_gens")
    if gens is None:
        gens = G.__dict__["_iso_gens"] = generating_set(G, list(G.elements()))
    g_orders = G.element_orders
    h_orders = H.element_orders
    if bijective:
        gsz, hsz = _class_sizes(G), _class_sizes(H)
        candidates = [[b for b in H.elements() if h_orders[b] == g_orders[s] and hsz[b] == gsz[s]]
                      for s in gens]
    else:
        candidates = [[b for b in H.elements() if h_orders[b] == g_orders[s]] for s in gens]

    def extend(images: list[int]) -> dict | None:
        chosen = gens[:len(images)]
        f = {0: 0}
        used = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            fx = f[x]
            for s, t in zip(chosen, images):
                y = G.mul(x, s)
                fy = H.mul(fx, t)
                prev = f.get(y)
                if prev is None:
                    if fy in used:
                        return None
                    f[y] = fy
                    used.add(fy)
                    frontier.append(y)
                elif prev != fy:
                    return None
        return f

    def search(images: list[int]):
        if len(images) == len(gens):
            f = extend(images)
            if f is not None and len(f) == G.order:
                yield tuple(f[a] for a in G.elements())
            return
        for b in candidates[len(images)]:
            images.append(b)
            if extend(images) is not None:
                yield from search(images)
            images.pop()

    if G.order == 1:
        yield (0,)
        return
    yield from search([])


def _check_iso_bound(*groups: FiniteGroup) -> None:
    bound = config.limits().max_iso_order
    for G in groups:
        if G.order > bound:
            raise SizeBoundError(f"isomorphism test out of range: order {G.order} exceeds bound {bound}")


def are_isomorphic(G: FiniteGroup, H: FiniteGroup) -> GroupIso | None:
    """An explicit isomorphism G -> H, or None."""
    if G.order != H.order:
        return None
    _check_iso_bound(G, H)
    if invariants(G) != invariants(H):
        return None
    for f in _homomorphisms(G, H, bijective=True):
        return GroupIso(G, H, f)
    return None


def find_embedding(G: FiniteGroup, H: FiniteGroup) -> GroupIso | None:
    """Some injective homomorphism G -> H, or None."""
    if H.order % G.order:
        return None
    _check_iso_bound(G)
    for f in _homomorphisms(G, H, bijective=False):
        return GroupIso(G, H, f)
    return None


def automorphisms(G: FiniteGroup) -> list[tuple]:
    """All automorphisms of G as image tuples (identity map first)."""
    cached = G.__dict__.get("_automorphisms")
    if cached is None:
        _check_iso_bound(G)
        found = list(_homomorphisms(G, G, bijective=True))
        ident = tuple(G.elements())
        found.sort(key=lambda f: f != ident)
        cached = G.__dict__["_automorphisms"] = found
    return cached
