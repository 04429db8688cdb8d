"""Equivariant bundles over cell G-sets, ages, and the L-weighted (generalized)
higher-order Euler characteristics.

A bundle is described through two queries on the ambient action: the fiber
rank at a cell and the eigenphases (rationals in [0, 1)) of an element fixing
that cell.  Ages are sums of eigenphases.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .groups import FiniteGroup, Subgroup
from .gsets import Action, GSet, induced_gset, product, wreath_power, big_diagonal_complement
from .isomorphism import automorphisms
from .k0fgr import REGISTRY, FgrClass, group_handle
from .lpoly import LPolynomial
from .series import (LPOLYNOMIALS, Ring, TruncatedSeries, power_via_lambda,
                     zeta_power_L)


class BundleError(ValueError):
    pass


def _frac_mod1(v) -> Fraction:
    q = Fraction(v) if not isinstance(v, str) else Fraction(v.strip())
    return q - (q.numerator // q.denominator)


class Bundle:
    """Base class: subclasses implement ``rank`` and ``_phases``."""

    action: Action

    def rank(self, x: int) -> int:
        raise NotImplementedError

    def _phases(self, x: int, g: int) -> tuple:
        raise NotImplementedError

    def eigenphases(self, x: int, g: int) -> tuple:
        if self.action.images(g)[x] != x:
            raise BundleError(f"element {g} does not fix cell {x}")
        return self._phases(x, g)

    def age(self, x: int, g: int) -> Fraction:
        return sum(self.eigenphases(x, g), Fraction(0))

    def check(self, X: GSet | None = None) -> bool:
        """Identity acts trivially and the phase count equals the rank on every fixed cell."""
        X = X or GSet(self.action)
        for x in X.cells:
            if any(self._phases(x, 0)):
                return False
        for g in X.acting.sorted:
            img = self.action.images(g)
            for x in X.cells:
                if img[x] == x:
                    ph = self._phases(x, g)
                    if len(ph) != self.rank(x) or any(not 0 <= q < 1 for q in ph):
                        return False
        return True


class ZeroBundle(Bundle):
    def __init__(self, X: GSet):
        self.action = X.action

    def rank(self, x):
        return 0

    def _phases(self, x, g):
        return ()


class CharacterBundle(Bundle):
    """Per orbit, a list of one-dimensional characters of the basepoint stabilizer."""

    def __init__(self, X: GSet, orbit_characters: Mapping[int, Sequence[Mapping[int, object]]]):
        if not X.is_standalone:
            raise BundleError("bundles are defined on a standalone G-set")
        self.action = X.action
        self.base = X
        G = X.group
        self._orbit_of = {}
        self._data = {}
        by_basepoint = dict(orbit_characters)
        for orb in X.orbit_decomposition.orbits:
            chosen = [b for b in by_basepoint if b in orb.cells]
            if len(chosen) > 1:
                raise BundleError(f"orbit of cell {orb.basepoint} given twice")
            x0 = chosen[0] if chosen else orb.basepoint
            chars = by_basepoint.pop(x0, [])
            stab = orb.stabilizer if x0 == orb.basepoint else _stabilizer(X, x0)
            full = [_extend_character(G, stab, c) for c in chars]
            transport = {}
            for g in G.elements():
                y = X.act(g, x0)
                if y not in transport:
                    transport[y] = g
            for y in orb.cells:
                self._orbit_of[y] = x0
            self._data[x0] = (full, transport, stab)
        if by_basepoint:
            raise BundleError(f"unknown basepoints {sorted(by_basepoint)}")

    def rank(self, x):
        return len(self._data[self._orbit_of[x]][0])

    def _phases(self, x, g):
        x0 = self._orbit_of[x]
        chars, transport, _ = self._data[x0]
        if not chars:
            return ()
        G = self.action.group
        h = transport[x]
        s = G.mul(G.mul(G.inv(h), g), h)
        return tuple(sorted(c[s] for c in chars))

    def characters(self, x0: int) -> list[dict]:
        return self._data[x0][0]


def _stabilizer(X: GSet, x: int) -> Subgroup:
    return Subgroup(X.group, frozenset(g for g in X.group.elements() if X.act(g, x) == x))


def _extend_character(G: FiniteGroup, S: Subgroup, values: Mapping[int, object]) -> dict:
    """Extend a character given on some elements of S to all of S, rejecting non-homomorphisms."""
    vals = {}
    for s, v in values.items():
        s = int(s)
        if s not in S:
            raise BundleError(f"element {s} is not in the stabilizer")
        vals[s] = _frac_mod1(v)
    chi = {0: Fraction(0)}
    frontier = [0]
    gens = [s for s in vals if s != 0]
    if vals.get(0, Fraction(0)) != 0:
        raise BundleError("character must vanish on the identity")
    while frontier:
        x = frontier.pop()
        for s in gens:
            y = G.mul(x, s)
            v = _frac_mod1(chi[x] + vals[s])
            prev = chi.get(y)
            if prev is None:
                chi[y] = v
                frontier.append(y)
            elif prev != v:
                raise BundleError("character values are not a homomorphism of the stabilizer")
    if set(chi) != set(S.members):
        raise BundleError("character values must be given on a generating set of the stabilizer")
    for s, v in vals.items():
        if chi[s] != v:
            raise BundleError("character values are not a homomorphism of the stabilizer")
    for s, v in chi.items():
        if _frac_mod1(v * G.element_order(s)) != 0:
            raise BundleError("character value incompatible with element order")
    return chi


class InducedBundle(Bundle):
    """ind B on the induced G-set: the fiber at [t_j, x] is the fiber of B at x."""

    def __init__(self, B: Bundle, I: GSet):
        Z, f, reps, decomp, _ = I.action.induced_from
        if B.action is not Z.action:
            raise BundleError("bundle does not live on the induced G-set's source")
        self.action = I.action
        self.base_bundle = B
        self._m = len(Z.cells)
        self._reps = reps
        self._decomp = decomp

    def rank(self, x):
        return self.base_bundle.rank(x % self._m)

    def _phases(self, x, h):
        j, z = divmod(x, self._m)
        H = self.action.group
        l, g = self._decomp[H.mul(h, self._reps[j])]
        return self.base_bundle._phases(z, g)


class ProductBundle(Bundle):
    """Exterior direct sum of two bundles on the product G-set."""

    def __init__(self, B1: Bundle, B2: Bundle, P: GSet):
        self.action = P.action
        self.b1, self.b2 = B1, B2
        self._k = len(B2.action)
        self._horder = B2.action.group.order

    def rank(self, x):
        a, b = divmod(x, self._k)
        return self.b1.rank(a) + self.b2.rank(b)

    def _phases(self, x, g):
        a, b = divmod(x, self._k)
        ga, gb = divmod(g, self._horder)
        return tuple(sorted(self.b1._phases(a, ga) + self.b2._phases(b, gb)))


class WreathPowerBundle(Bundle):
    """E^n on Z^n; a cycle of length r with cycle product h turns each base phase
    theta of h into (theta + m)/r, m = 0..r-1."""

    def __init__(self, B: Bundle, P: GSet):
        Z, n, tuples = P.action.power_of
        if B.action is not Z.action:
            raise BundleError("bundle does not live on the base of this power")
        self.action = P.action
        self.base_bundle = B
        self.n = n
        self._tuples = tuples
        self._parts = P.group.info["parts"]
        self._base_group = Z.group

    def rank(self, x):
        return sum(self.base_bundle.rank(c) for c in self._tuples[x])

    def cycles(self, x: int, w: int) -> list[tuple]:
        """(cycle start, length, cycle product) for each cycle of the permutation part."""
        gs, sigma = self._parts[w]
        G = self._base_group
        seen = [False] * self.n
        out = []
        for j in range(self.n):
            if seen[j]:
                continue
            h = 0
            pos = j
            r = 0
            while True:
                seen[pos] = True
                pos = sigma[pos]
                h = G.mul(gs[pos], h)
                r += 1
                if pos == j:
                    break
            out.append((j, r, h))
        return out

    def _phases(self, x, w):
        cell = self._tuples[x]
        out = []
        for j, r, h in self.cycles(x, w):
            for theta in self.base_bundle._phases(cell[j], h):
                out.extend((theta + m) / r for m in range(r))
        return tuple(sorted(out))


def age(B: Bundle, x: int, g: int) -> Fraction:
    return B.age(x, g)


def age_wreath(B: WreathPowerBundle, x: int, w: int) -> Fraction:
    """Sum over cycles of [age(base, x_c, h_c) + rank(x_c)(r - 1)/2]."""
    if B.action.images(w)[x] != x:
        raise BundleError(f"element {w} does not fix cell {x}")
    cell = B._tuples[x]
    total = Fraction(0)
    for j, r, h in B.cycles(x, w):
        base = cell[j]
        total += B.base_bundle.age(base, h) + Fraction(B.base_bundle.rank(base) * (r - 1), 2)
    return total


def age_stratify(Z: GSet, B: Bundle, g: int) -> dict:
    """Fixed cells of g grouped by age, each acted on by the centralizer of g."""
    if g not in Z.acting:
        raise BundleError("element is not in the acting group")
    C = Z.acting.centralizer(g)
    strata: dict[Fraction, list] = {}
    for x in Z.fixed_cells(g):
        strata.setdefault(B.age(x, g), []).append(x)
    return {q: GSet(Z.action, cells, C) for q, cells in sorted(strata.items())}


def rank_stratify(Z: GSet, B: Bundle) -> dict:
    strata: dict[int, list] = {}
    for x in Z.cells:
        strata.setdefault(B.rank(x), []).append(x)
    return {d: Z.sub(cells) for d, cells in sorted(strata.items())}


def _parse_phi(phi) -> tuple:
    return tuple(Fraction(p) if not isinstance(p, str) else Fraction(p.strip()) for p in phi)


def generalized_chi(Z: GSet, B: Bundle, k: int, phi: Sequence = ()) -> LPolynomial:
    """Sum over [g] and ages q of the order-(k-1) value on the age-q stratum of Z^g
    (under the centralizer) times L^(phi_k q); order 0 is [Z/G]."""
    phi = _parse_phi(phi)
    if k < 0:
        raise ValueError("k must be nonnegative")
    if len(phi) < k:
        raise ValueError(f"weight vector needs at least {k} entries")
    if B.action is not Z.action:
        raise BundleError("bundle and G-set live on different actions")
    images = Z.action.images
    dims = Z.action.dims
    memo: dict[tuple, LPolynomial] = {}

    def rec(cells: frozenset, S: Subgroup, k: int) -> LPolynomial:
        if not cells:
            return LPolynomial()
        if k == 0:
            acc: dict = {}
            seen = set()
            for x in sorted(cells):
                if x in seen:
                    continue
                acc[dims[x]] = acc.get(dims[x], 0) + 1
                for h in S.sorted:
                    seen.add(images(h)[x])
            return LPolynomial(acc)
        key = (cells, S.members, k)
        v = memo.get(key)
        if v is not None:
            return v
        total = LPolynomial()
        weight = phi[k - 1]
        for cls in S.conjugacy_classes():
            g = cls.representative
            img = images(g)
            strata: dict = {}
            for x in cells:
                if img[x] == x:
                    strata.setdefault(B.age(x, g), []).append(x)
            if not strata:
                continue
            C = S.centralizer(g)
            for q, xs in strata.items():
                total = total + rec(frozenset(xs), C, k - 1).shift(weight * q)
        memo[key] = total
        return total

    return rec(frozenset(Z.cells), Z.acting, k)


def phi_k(r: Sequence[int], phi: Sequence) -> Fraction:
    """phi_1(r_1 - 1) + phi_2 r_1 (r_2 - 1) + ... + phi_k r_1..r_{k-1} (r_k - 1)."""
    phi = _parse_phi(phi)
    if len(phi) != len(r):
        raise ValueError("r and phi must have the same length")
    total = Fraction(0)
    prefix = 1
    for rj, pj in zip(r, phi):
        total += pj * prefix * (rj - 1)
        prefix *= rj
    return total


# -- products, inductions and powers of bundles -----------------------------------

def induced_bundle(Z: GSet, B: Bundle, H: FiniteGroup, embedding) -> tuple[GSet, Bundle]:
    if not Z.is_standalone:
        raise BundleError("induce from a standalone G-set")
    I = induced_gset(Z, H, embedding)
    return I, InducedBundle(B, I)


def product_bundle(X: GSet, B1: Bundle, Y: GSet, B2: Bundle) -> tuple[GSet, Bundle]:
    if not (X.is_standalone and Y.is_standalone):
        raise BundleError("form products of standalone G-sets")
    P = product(X, Y)
    return P, ProductBundle(B1, B2, P)


def wreath_bundle(Z: GSet, B: Bundle, n: int) -> tuple[GSet, WreathPowerBundle]:
    if not Z.is_standalone:
        raise BundleError("form powers of standalone G-sets")
    P = wreath_power(Z, n)
    return P, WreathPowerBundle(B, P)


# -- the wreath-power Macdonald-type theorem ----------------------------------------

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


def wreath_theorem_rhs(strata_values: Mapping[int, LPolynomial], k: int, phi, N: int) -> TruncatedSeries:
    """prod_d (prod_r (1 - L^{Phi_k(r) d/2} t^{r_1..r_k})^{r_2 r_3^2..})^{-value_d}."""
    phi = _parse_phi(phi)[:k]
    zeta_L = zeta_power_L()
    out = TruncatedSeries.one(LPOLYNOMIALS, N)
    for d, value in sorted(strata_values.items()):
        base = TruncatedSeries.one(LPOLYNOMIALS, N)
        for r in _r_tuples(k, N):
            size = 1
            exponent = 1
            for j, rj in enumerate(r):
                size *= rj
                exponent *= rj ** j
            coeffs = [LPolynomial.const(1)] + [LPolynomial()] * N
            coeffs[size] = coeffs[size] - LPolynomial.L(phi_k(r, phi) * d / 2)
            base = base * (TruncatedSeries(LPOLYNOMIALS, coeffs, N) ** exponent)
        out = out * power_via_lambda(base, -value, zeta_L)
    return out


@dataclass
class WreathBundleReport:
    k: int
    phi: tuple
    N: int
    lhs: list
    rhs: list
    exponents: dict
    passed: bool

    def to_json(self) -> dict:
        return {"k": self.k, "phi": [str(p) for p in self.phi], "N": self.N,
                "lhs": [c.to_json() for c in self.lhs], "rhs": [c.to_json() for c in self.rhs],
                "lhs_text": [str(c) for c in self.lhs], "rhs_text": [str(c) for c in self.rhs],
                "exponents": {str(d): v.to_json() for d, v in sorted(self.exponents.items())},
                "passed": self.passed}


def verify_wreath_bundle_theorem(Z: GSet, B: Bundle, k: int, phi, N: int) -> WreathBundleReport:
    """Generalized chi of (Z^n, E^n, G_n) for n <= N against the product formula."""
    phi = _parse_phi(phi)
    if not Z.is_standalone:
        raise BundleError("the theorem is checked on a standalone G-set")
    lhs = [LPolynomial.const(1)]
    for n in range(1, N + 1):
        P, E = wreath_bundle(Z, B, n)
        lhs.append(generalized_chi(P, E, k, phi))
    exponents = {d: generalized_chi(S, B, k, phi) for d, S in rank_stratify(Z, B).items()}
    rhs = list(wreath_theorem_rhs(exponents, k, phi, N).coeffs)
    return WreathBundleReport(k, phi, N, lhs, rhs, exponents, lhs == rhs)


# -- classes with bundle data ----------------------------------------------------

_canon_lock = threading.Lock()


def _canonical_key(G: FiniteGroup, phases) -> tuple[int, tuple]:
    """(registry handle, phase table on the representative, minimized over its automorphisms)."""
    h = group_handle(G)
    rep = REGISTRY.group(h)
    to_rep = REGISTRY.iso_to_rep(G)
    from_rep = [0] * rep.order
    for a, b in enumerate(to_rep.map):
        from_rep[b] = a
    table = [tuple(phases(from_rep[r])) for r in rep.elements()]
    best = None
    for alpha in automorphisms(rep):
        cand = tuple(table[alpha[r]] for r in rep.elements())
        if best is None or cand < best:
            best = cand
    return h, best


class VectClass:
    """Integer combination of (group handle, dim, canonical fiber phase table)."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        items = terms.items() if isinstance(terms, dict) else terms
        acc: dict[tuple, int] = {}
        for key, c in items:
            if c:
                acc[key] = acc.get(key, 0) + c
        self.terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def point(cls, G: FiniteGroup, phases=lambda g: (), dim: int = 0, coeff: int = 1) -> "VectClass":
        h, key = _canonical_key(G, phases)
        return cls({(h, dim, key): coeff})

    @classmethod
    def one(cls) -> "VectClass":
        from .groups import trivial_group
        return cls.point(trivial_group())

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = VectClass.one() * other
        return isinstance(other, VectClass) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, VectClass):
            return other
        if isinstance(other, int):
            return VectClass.one() * other
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self.terms)
        for k, c in other.terms.items():
            acc[k] = acc.get(k, 0) + c
        return VectClass(acc)

    __radd__ = __add__

    def __neg__(self):
        return VectClass({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return VectClass({k: c * other for k, c in self.terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        from .groups import direct_product
        acc: dict[tuple, int] = {}
        for (h1, d1, t1), c1 in self.terms.items():
            for (h2, d2, t2), c2 in other.terms.items():
                G1, G2 = REGISTRY.group(h1), REGISTRY.group(h2)
                P = direct_product(G1, G2)
                n2 = G2.order

                def phases(g, t1=t1, t2=t2, n2=n2):
                    a, b = divmod(g, n2)
                    return tuple(sorted(t1[a] + t2[b]))

                h, key = _canonical_key(P, phases)
                k = (h, d1 + d2, key)
                acc[k] = acc.get(k, 0) + c1 * c2
        return VectClass(acc)

    __rmul__ = __mul__

    def forget(self) -> FgrClass:
        """Drop the bundle data."""
        acc: dict = {}
        for (h, d, _), c in self.terms.items():
            acc[(h, d)] = acc.get((h, d), 0) + c
        return FgrClass(acc)

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def items(self) -> list:
        return sorted(self.terms.items(),
                      key=lambda kv: (REGISTRY.order(kv[0][0]), REGISTRY.label(kv[0][0]), kv[0][1], kv[0][2]))

    def to_json(self) -> list:
        out = []
        for (h, d, key), c in self.items():
            fg = FgrClass({(h, d): 1}).to_json()[0]
            fg["coeff"] = c
            fg["fiber_phases"] = [[str(q) for q in ph] for ph in key]
            out.append(fg)
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (h, d, key), c in self.items():
            rank = len(key[0]) if key else 0
            ages = sorted({sum(ph, Fraction(0)) for ph in key})
            mono = f"[{REGISTRY.label(h)}, rank {rank}, ages {', '.join(str(a) for a in ages)}]"
            if d:
                mono += f"*L^{d}"
            parts.append(f"{c}*{mono}" if c != 1 else mono)
        return " + ".join(parts)

    def __repr__(self):
        return f"VectClass({self})"


def class_of_vect(Z: GSet, B: Bundle) -> VectClass:
    """Sum over orbits of (stabilizer, dim, fiber phase table at the basepoint)."""
    if B.action is not Z.action:
        raise BundleError("bundle and G-set live on different actions")
    acc = VectClass()
    for orb in Z.orbit_decomposition.orbits:
        S = orb.stabilizer
        ids = S.sorted
        x0 = orb.basepoint
        acc = acc + VectClass.point(S.as_group, lambda i, ids=ids, x0=x0: B.eigenphases(x0, ids[i]), orb.dim)
    return acc


class PhaseTableBundle(Bundle):
    """A point acted on by G with the given fiber phase table (indexed by element id)."""

    def __init__(self, G: FiniteGroup, table: Sequence[tuple], dim: int = 0):
        from .gsets import point
        self.base = point(G, dim)
        self.action = self.base.action
        self._table = table

    def rank(self, x):
        return len(self._table[0])

    def _phases(self, x, g):
        return self._table[g]


def generalized_chi_class(a: VectClass, k: int, phi: Sequence = ()) -> LPolynomial:
    """Linear extension of the generalized chi from (pt, fiber, S) x L^d basis terms."""
    total = LPolynomial()
    for (h, d, key), c in a.terms.items():
        B = PhaseTableBundle(REGISTRY.group(h), key)
        total = total + generalized_chi(B.base, B, k, phi).shift(d) * c
    return total


VECT = Ring("K0fGr(Vect)", VectClass, VectClass.one)


def zeta_vect_series(Z: GSet, B: Bundle, N: int) -> TruncatedSeries:
    """1 + sum_n [(Z^n, E^n, G_n)] t^n."""
    coeffs = [VectClass.one()]
    for n in range(1, N + 1):
        P, E = wreath_bundle(Z, B, n)
        coeffs.append(class_of_vect(P, E))
    return TruncatedSeries(VECT, coeffs, N)


def lambda_vect_series(Z: GSet, B: Bundle, N: int) -> TruncatedSeries:
    """1 + sum_n [(Z^n minus the big G-diagonal, E^n restricted, G_n)] t^n."""
    orbits = len(Z.orbit_decomposition)
    coeffs = [VectClass.one()]
    for n in range(1, N + 1):
        if n > orbits:
            coeffs.append(VectClass())
            continue
        D = big_diagonal_complement(Z, n)
        E = WreathPowerBundle(B, GSet(D.action))
        coeffs.append(class_of_vect(D, E))
    return TruncatedSeries(VECT, coeffs, N)
