"""Finite G-sets of dimension-weighted cells.

A cell of dimension d models a piece of class L^d on which its stabilizer acts
trivially.  A :class:`GSet` is a view on an ambient :class:`Action`: a subset of
its cells that is closed under an acting subgroup.  Fixed sets and
restrictions are views; products, powers and inductions build new actions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Sequence

from .groups import (FiniteGroup, Subgroup, compose, direct_product, wreath_product)
from .isomorphism import GroupIso
from .lpoly import LPolynomial


class GSetError(ValueError):
    pass


class Action:
    """Ambient action of ``group`` on cells ``0..len(dims)-1``."""

    def __init__(self, group: FiniteGroup, dims: Sequence[int],
                 image_fn: Callable[[int], tuple] | None = None,
                 images: Sequence[tuple] | None = None,
                 labels: Sequence | None = None):
        if any(d < 0 for d in dims):
            raise GSetError("cell dimensions must be nonnegative")
        self.group = group
        self.dims = tuple(int(d) for d in dims)
        self._fn = image_fn
        self._images = dict(enumerate(images)) if images is not None else {}
        self.labels = tuple(labels) if labels is not None else tuple(range(len(self.dims)))

    def __len__(self):
        return len(self.dims)

    def images(self, g: int) -> tuple:
        img = self._images.get(g)
        if img is None:
            if g == 0:
                img = tuple(range(len(self.dims)))
            elif self._fn is None:
                raise GSetError(f"no action recorded for element {g}")
            else:
                img = tuple(self._fn(g))
            self._images[g] = img
        return img


class GSet:
    """Cells of an ambient action closed under an acting subgroup."""

    def __init__(self, action: Action, cells: Iterable[int] | None = None,
                 acting: Subgroup | None = None):
        self.action = action
        self.group = action.group
        self.cells = tuple(range(len(action))) if cells is None else tuple(sorted(cells))
        self.acting = acting if acting is not None else action.group.whole()
        if self.acting.parent is not self.group:
            raise GSetError("acting subgroup must belong to the ambient group")

    def __repr__(self):
        return f"<GSet cells={len(self.cells)} acting order={self.acting.order}>"

    def __len__(self):
        return len(self.cells)

    def act(self, g: int, x: int) -> int:
        return self.action.images(g)[x]

    def dim(self, x: int) -> int:
        return self.action.dims[x]

    def label(self, x: int):
        return self.action.labels[x]

    @property
    def dims(self) -> tuple:
        return tuple(self.action.dims[x] for x in self.cells)

    @property
    def is_standalone(self) -> bool:
        return self.acting.is_whole and len(self.cells) == len(self.action)

    def sub(self, cells: Iterable[int], check: bool = True) -> "GSet":
        """Sub-G-set on the given cells (must be closed under the acting group)."""
        cells = frozenset(cells)
        if check:
            for g in self.acting.gens:
                img = self.action.images(g)
                if any(img[x] not in cells for x in cells):
                    raise GSetError("cell subset is not invariant under the acting group")
        return GSet(self.action, cells, self.acting)

    def restrict(self, S: Subgroup) -> "GSet":
        if S.parent is not self.group or not S.members <= self.acting.members:
            raise GSetError("can only restrict to a subgroup of the acting group")
        return GSet(self.action, self.cells, S)

    def fixed_cells(self, g: int) -> tuple:
        img = self.action.images(g)
        return tuple(x for x in self.cells if img[x] == x)

    def standalone(self) -> "GSet":
        """Same G-set with the acting group and cells renumbered from scratch."""
        if self.is_standalone:
            return self
        S = self.acting
        H = S.as_group
        pos = {x: i for i, x in enumerate(self.cells)}
        ids = S.sorted
        parent_images = self.action.images
        cells = self.cells

        def image_fn(h: int) -> tuple:
            img = parent_images(ids[h])
            return tuple(pos[img[x]] for x in cells)

        action = Action(H, self.dims, image_fn, labels=[self.label(x) for x in cells])
        return GSet(action)

    @cached_property
    def orbit_decomposition(self) -> "OrbitDecomposition":
        return quotient(self)

    def orbit_of(self) -> dict:
        """Cell -> index of its orbit."""
        out = {}
        for i, orb in enumerate(self.orbit_decomposition.orbits):
            for x in orb.cells:
                out[x] = i
        return out

    def check_action_axioms(self) -> bool:
        G = self.group
        cells = self.cells
        for x in cells:
            if self.act(0, x) != x:
                return False
        members = self.acting.sorted
        for g in members:
            ig = self.action.images(g)
            for h in members:
                ih = self.action.images(h)
                igh = self.action.images(G.mul(g, h))
                if any(ig[ih[x]] != igh[x] for x in cells):
                    return False
        for orb in self.orbit_decomposition.orbits:
            if len({self.dim(x) for x in orb.cells}) != 1:
                return False
        return True


@dataclass(frozen=True)
class Orbit:
    cells: tuple
    basepoint: int
    stabilizer: Subgroup
    dim: int


@dataclass(frozen=True)
class OrbitDecomposition:
    orbits: tuple

    def __len__(self):
        return len(self.orbits)


# -- constructors ----------------------------------------------------------

def from_generator_action(G: FiniteGroup, dims: Sequence[int],
                          gen_images: Sequence[Sequence[int]]) -> GSet:
    """Close an action given on ``G.gens`` to all of G, rejecting non-actions."""
    m = len(dims)
    gens = G.gens
    if len(gen_images) != len(gens):
        raise GSetError(f"action must give images for all {len(gens)} generators")
    gen_imgs = []
    for i, img in enumerate(gen_images):
        img = tuple(int(v) for v in img)
        if len(img) != m or sorted(img) != list(range(m)):
            raise GSetError(f"action of generator {i} is not a permutation of the {m} cells")
        gen_imgs.append(img)
    images: dict[int, tuple] = {0: tuple(range(m))}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for s, simg in zip(gens, gen_imgs):
            y = G.mul(x, s)
            img = compose(images[x], simg)
            prev = images.get(y)
            if prev is None:
                images[y] = img
                frontier.append(y)
            elif prev != img:
                raise GSetError("generator images do not define a group action")
    action = Action(G, dims, images=[images[g] for g in G.elements()])
    X = GSet(action)
    for orb in X.orbit_decomposition.orbits:
        if len({X.dim(x) for x in orb.cells}) != 1:
            raise GSetError("cell dimension must be constant on orbits")
    return X


def point(G: FiniteGroup, dim: int = 0) -> GSet:
    return GSet(Action(G, [dim], lambda g: (0,)))


def trivial_gset(G: FiniteGroup, m: int, dims: Sequence[int] | None = None) -> GSet:
    dims = list(dims) if dims is not None else [0] * m
    ident = tuple(range(len(dims)))
    return GSet(Action(G, dims, lambda g: ident))


def empty(G: FiniteGroup) -> GSet:
    return GSet(Action(G, [], lambda g: ()))


def regular(G: FiniteGroup, dim: int = 0) -> GSet:
    return GSet(Action(G, [dim] * G.order, lambda g: tuple(G.mul(g, x) for x in G.elements())))


def cosets(G: FiniteGroup, S: Subgroup, dim: int = 0) -> GSet:
    """G acting on the left cosets gS (cells ordered by minimal representative)."""
    coset_of = {}
    reps = []
    for g in G.elements():
        if g in coset_of:
            continue
        idx = len(reps)
        reps.append(g)
        for s in S.sorted:
            coset_of[G.mul(g, s)] = idx

    def image_fn(g):
        return tuple(coset_of[G.mul(g, r)] for r in reps)

    return GSet(Action(G, [dim] * len(reps), image_fn, labels=reps))


# -- operations -------------------------------------------------------------

def fixed_set(X: GSet, S: Iterable[int]) -> GSet:
    """Cells fixed by every element of <S>, acted on by the normalizer of <S>."""
    S = list(S)
    for g in S:
        if g not in X.acting:
            raise GSetError(f"element {g} is not in the acting group")
    fixed = set(X.cells)
    for g in S:
        fixed &= set(X.fixed_cells(g))
    generated = X.acting.subgroup_generated(S)
    N = X.acting.normalizer_of(generated)
    return GSet(X.action, fixed, N)


def restrict_action(X: GSet, S: Subgroup) -> GSet:
    return X.restrict(S)


def quotient(X: GSet) -> OrbitDecomposition:
    members = X.acting.sorted
    images = [X.action.images(h) for h in members]
    seen = set()
    orbits = []
    for x in X.cells:
        if x in seen:
            continue
        orbit = set()
        stab = []
        for h, img in zip(members, images):
            y = img[x]
            orbit.add(y)
            if y == x:
                stab.append(h)
        seen |= orbit
        orbits.append(Orbit(tuple(sorted(orbit)), x, Subgroup(X.group, frozenset(stab)), X.dim(x)))
    return OrbitDecomposition(tuple(orbits))


def quotient_class(X: GSet) -> LPolynomial:
    """[X/G] as sum over orbits of L^dim."""
    acc: dict = {}
    for orb in X.orbit_decomposition.orbits:
        acc[orb.dim] = acc.get(orb.dim, 0) + 1
    return LPolynomial(acc)


def _embedding_map(G: FiniteGroup, H: FiniteGroup, embedding) -> tuple:
    f = embedding.map if isinstance(embedding, GroupIso) else tuple(embedding)
    if len(f) != G.order or len(set(f)) != G.order:
        raise GSetError("embedding must be injective on all group elements")
    if any(not 0 <= v < H.order for v in f):
        raise GSetError("embedding images must be elements of the target group")
    gens = G.gens or tuple(G.elements())
    for a in G.elements():
        for s in gens:
            if f[G.mul(a, s)] != H.mul(f[a], f[s]):
                raise GSetError("embedding is not a homomorphism")
    if f[0] != 0:
        raise GSetError("embedding must send identity to identity")
    return f


def induced_gset(Z: GSet, H: FiniteGroup, embedding) -> GSet:
    """ind_G^H Z = (H x Z)/~ with (h, x) ~ (h f(g)^-1, g x)."""
    Z = Z.standalone()
    G = Z.group
    f = _embedding_map(G, H, embedding)
    finv = {b: a for a, b in enumerate(f)}
    decomp = {}
    reps = []
    for h in H.elements():
        if h in decomp:
            continue
        j = len(reps)
        reps.append(h)
        for g in G.elements():
            decomp[H.mul(h, f[g])] = (j, g)
    m = len(Z.cells)
    zimg = Z.action.images

    def image_fn(h: int) -> tuple:
        out = []
        for t in reps:
            j, g = decomp[H.mul(h, t)]
            gi = zimg(g)
            out.extend(j * m + gi[x] for x in range(m))
        return tuple(out)

    dims = [Z.dim(x) for x in range(m)] * len(reps)
    labels = [(t, Z.label(x)) for t in reps for x in range(m)]
    action = Action(H, dims, image_fn, labels=labels)
    action.induced_from = (Z, f, reps, decomp, finv)
    return GSet(action)


def product(X: GSet, Y: GSet) -> GSet:
    """X x Y over G x H, componentwise action, dimensions add."""
    X, Y = X.standalone(), Y.standalone()
    G, H = X.group, Y.group
    D = direct_product(G, H)
    m, k = len(X), len(Y)
    ximg, yimg = X.action.images, Y.action.images
    horder = H.order

    def image_fn(g: int) -> tuple:
        a, b = divmod(g, horder)
        ia, ib = ximg(a), yimg(b)
        return tuple(ia[x] * k + ib[y] for x in range(m) for y in range(k))

    dims = [X.dim(x) + Y.dim(y) for x in range(m) for y in range(k)]
    labels = [(X.label(x), Y.label(y)) for x in range(m) for y in range(k)]
    return GSet(Action(D, dims, image_fn, labels=labels))


def wreath_cell_image(X: GSet, gs: tuple, sigma: tuple, cell: tuple) -> tuple:
    """((g), sigma) sends (x_1..x_n) to (g_i x_{sigma^-1(i)})_i."""
    out = [0] * len(cell)
    images = X.action.images
    for j, x in enumerate(cell):
        i = sigma[j]
        out[i] = images(gs[i])[x]
    return tuple(out)


def wreath_power(X: GSet, n: int) -> GSet:
    """X^n with the action of the wreath product G_n."""
    X = X.standalone()
    W = wreath_product(X.group, n)
    m = len(X)
    tuples = list(itertools.product(range(m), repeat=n))
    index = {t: i for i, t in enumerate(tuples)}
    parts = W.info["parts"]

    def image_fn(w: int) -> tuple:
        gs, sigma = parts[w]
        return tuple(index[wreath_cell_image(X, gs, sigma, t)] for t in tuples)

    dims = [sum(X.dim(x) for x in t) for t in tuples]
    labels = [tuple(X.label(x) for x in t) for t in tuples]
    action = Action(W, dims, image_fn, labels=labels)
    action.power_of = (X, n, tuples)
    return GSet(action)


def big_diagonal_complement(X: GSet, n: int) -> GSet:
    """Tuples in X^n whose coordinates lie in pairwise distinct G-orbits."""
    X = X.standalone()
    P = wreath_power(X, n)
    orbit = X.orbit_of()
    tuples = P.action.power_of[2]
    keep = [i for i, t in enumerate(tuples) if len({orbit[x] for x in t}) == n]
    return P.sub(keep)


def big_diagonal(X: GSet, n: int) -> GSet:
    """Tuples in X^n with at least two coordinates in one G-orbit."""
    X = X.standalone()
    P = wreath_power(X, n)
    orbit = X.orbit_of()
    tuples = P.action.power_of[2]
    keep = [i for i, t in enumerate(tuples) if len({orbit[x] for x in t}) < n]
    return P.sub(keep)


def disjoint_union(X: GSet, Y: GSet) -> GSet:
    X, Y = X.standalone(), Y.standalone()
    if X.group is not Y.group:
        if X.group.perms != Y.group.perms:
            raise GSetError("disjoint union needs the same acting group")
    G = X.group
    m = len(X)
    ximg, yimg = X.action.images, Y.action.images

    def image_fn(g: int) -> tuple:
        return ximg(g) + tuple(m + y for y in yimg(g))

    dims = list(X.dims) + list(Y.dims)
    labels = [(0, X.label(x)) for x in range(m)] + [(1, Y.label(y)) for y in range(len(Y))]
    return GSet(Action(G, dims, image_fn, labels=labels))


def _plain(X) -> list:
    if isinstance(X, int):
        return list(range(X))
    if isinstance(X, GSet):
        return list(X.cells)
    return list(X)


def symmetric_power(X, n: int) -> list[tuple]:
    """Multisets of size n drawn from a plain finite set."""
    return list(itertools.combinations_with_replacement(_plain(X), n))


def configuration_space(X, n: int) -> list[tuple]:
    """Subsets of size n of a plain finite set."""
    return list(itertools.combinations(_plain(X), n))
