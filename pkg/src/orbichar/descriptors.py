"""JSON-compatible descriptors for groups, G-sets, bundles and series.

Rationals travel as strings "p/q".  Parse errors are raised as
DescriptorError carrying the path of the offending field.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .bundles import BundleError, CharacterBundle, ZeroBundle
from .groups import (FiniteGroup, closure, direct_product, generating_set, group_from_permutations,
                     group_from_table, named_group, wreath_product)
from .gsets import GSet, GSetError, from_generator_action, point, regular, trivial_gset
from .lpoly import LPolynomial


class DescriptorError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _require(d: Any, key: str, path: str):
    if not isinstance(d, dict):
        raise DescriptorError(path, "expected an object")
    if key not in d:
        raise DescriptorError(f"{path}.{key}", "missing field")
    return d[key]


def _int(v: Any, path: str, minimum: int | None = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise DescriptorError(path, f"expected an integer, got {v!r}")
    if minimum is not None and v < minimum:
        raise DescriptorError(path, f"must be at least {minimum}")
    return v


def parse_fraction(v: Any, path: str = "value") -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise DescriptorError(path, "rationals must be integers or strings 'p/q'")
    try:
        return Fraction(v.strip()) if isinstance(v, str) else Fraction(int(v))
    except (ValueError, TypeError, ZeroDivisionError):
        raise DescriptorError(path, f"not a rational: {v!r}") from None


# -- groups -------------------------------------------------------------------

def parse_group(d: Any, path: str = "group") -> FiniteGroup:
    if isinstance(d, str):
        d = {"type": "named", "name": d}
    kind = _require(d, "type", path)
    try:
        if kind == "named":
            name = _require(d, "name", path)
            if not isinstance(name, str):
                raise DescriptorError(f"{path}.name", "expected a string")
            try:
                return named_group(name)
            except ValueError as exc:
                raise DescriptorError(f"{path}.name", str(exc)) from None
        if kind == "permutation":
            degree = _int(_require(d, "degree", path), f"{path}.degree", 1)
            gens = _require(d, "generators", path)
            if not isinstance(gens, list):
                raise DescriptorError(f"{path}.generators", "expected a list of image lists")
            for i, g in enumerate(gens):
                if not isinstance(g, list) or not all(isinstance(v, int) for v in g):
                    raise DescriptorError(f"{path}.generators[{i}]", "expected a list of integers")
                if sorted(g) != list(range(degree)):
                    raise DescriptorError(f"{path}.generators[{i}]",
                                          f"not a permutation of 0..{degree - 1}")
            return group_from_permutations(degree, gens)
        if kind == "table":
            mul = _require(d, "mul", path)
            if not isinstance(mul, list) or not all(isinstance(r, list) for r in mul):
                raise DescriptorError(f"{path}.mul", "expected a square list of lists")
            try:
                return group_from_table(mul)
            except ValueError as exc:
                raise DescriptorError(f"{path}.mul", str(exc)) from None
        if kind == "product":
            factors = _require(d, "factors", path)
            if not isinstance(factors, list) or not factors:
                raise DescriptorError(f"{path}.factors", "expected a non-empty list")
            G = parse_group(factors[0], f"{path}.factors[0]")
            for i, f in enumerate(factors[1:], 1):
                G = direct_product(G, parse_group(f, f"{path}.factors[{i}]"))
            return G
        if kind == "wreath":
            base = parse_group(_require(d, "base", path), f"{path}.base")
            n = _int(_require(d, "n", path), f"{path}.n", 1)
            return wreath_product(base, n)
    except DescriptorError:
        raise
    except ValueError as exc:
        raise DescriptorError(path, str(exc)) from None
    raise DescriptorError(f"{path}.type", f"unknown group type {kind!r}")


def group_to_json(G: FiniteGroup) -> dict:
    """A descriptor that re-parses to the same element numbering where possible."""
    if G.name:
        try:
            N = named_group(G.name)
        except ValueError:
            N = None
        if N is not None and N.perms == G.perms:
            return {"type": "named", "name": G.name}
    if G.kind == "wreath" and "base" in G.info and "n" in G.info and "blocks" not in G.info:
        return {"type": "wreath", "base": group_to_json(G.info["base"]), "n": G.info["n"]}
    if G.kind == "product" and "factors" in G.info and "blocks" not in G.info:
        return {"type": "product", "factors": [group_to_json(F) for F in G.info["factors"]]}
    gens = list(G.gens)
    if closure(G, gens) != frozenset(G.elements()):
        gens = list(generating_set(G, list(G.elements())))
    return {"type": "permutation", "degree": G.degree,
            "generators": [list(G.perms[g]) for g in gens]}


# -- G-sets -----------------------------------------------------------------------

def parse_gset(d: Any, path: str = "gset") -> GSet:
    G = parse_group(_require(d, "group", path), f"{path}.group")
    preset = d.get("preset")
    if preset is not None:
        dim = _int(d.get("dim", 0), f"{path}.dim", 0)
        if preset == "point":
            return point(G, dim)
        if preset == "regular":
            return regular(G, dim)
        if preset == "trivial":
            m = _int(_require(d, "size", path), f"{path}.size", 0)
            return trivial_gset(G, m, [dim] * m)
        raise DescriptorError(f"{path}.preset", f"unknown preset {preset!r}")
    cells = _require(d, "cells", path)
    if not isinstance(cells, list):
        raise DescriptorError(f"{path}.cells", "expected a list of {\"dim\": d} objects")
    dims = []
    for i, c in enumerate(cells):
        if not isinstance(c, dict):
            raise DescriptorError(f"{path}.cells[{i}]", "expected an object")
        dims.append(_int(c.get("dim", 0), f"{path}.cells[{i}].dim", 0))
    action = d.get("action", {})
    if not isinstance(action, dict):
        raise DescriptorError(f"{path}.action", "expected an object keyed by generator index")
    ident = list(range(len(dims)))
    images = []
    for i in range(len(G.gens)):
        img = action.get(str(i), ident)
        if not isinstance(img, list) or not all(isinstance(v, int) for v in img):
            raise DescriptorError(f"{path}.action.{i}", "expected a list of cell indices")
        images.append(img)
    extra = set(action) - {str(i) for i in range(len(G.gens))}
    if extra:
        raise DescriptorError(f"{path}.action",
                              f"keys {sorted(extra)} are not generator indices 0..{len(G.gens) - 1}")
    try:
        return from_generator_action(G, dims, images)
    except GSetError as exc:
        raise DescriptorError(f"{path}.action", str(exc)) from None


def gset_to_json(X: GSet) -> dict:
    X = X.standalone()
    G = X.group
    return {"group": group_to_json(G),
            "cells": [{"dim": X.dim(x)} for x in X.cells],
            "action": {str(i): list(X.action.images(g)) for i, g in enumerate(G.gens)}}


# -- bundles ------------------------------------------------------------------------

def parse_bundle(d: Any, path: str = "bundle"):
    """Returns (G-set, bundle)."""
    X = parse_gset(_require(d, "base", path), f"{path}.base")
    orbits = d.get("orbits", [])
    if not isinstance(orbits, list):
        raise DescriptorError(f"{path}.orbits", "expected a list")
    if not orbits:
        return X, ZeroBundle(X)
    data = {}
    for i, o in enumerate(orbits):
        p = f"{path}.orbits[{i}]"
        bp = _int(_require(o, "basepoint", p), f"{p}.basepoint", 0)
        if bp >= len(X):
            raise DescriptorError(f"{p}.basepoint", f"no cell {bp}")
        chars = o.get("characters", [])
        if not isinstance(chars, list):
            raise DescriptorError(f"{p}.characters", "expected a list")
        parsed = []
        for j, c in enumerate(chars):
            if not isinstance(c, dict):
                raise DescriptorError(f"{p}.characters[{j}]", "expected an object")
            vals = {}
            for key, v in c.items():
                try:
                    s = int(key)
                except ValueError:
                    raise DescriptorError(f"{p}.characters[{j}]",
                                          f"key {key!r} is not an element id") from None
                vals[s] = parse_fraction(v, f"{p}.characters[{j}].{key}")
            parsed.append(vals)
        if bp in data:
            raise DescriptorError(f"{p}.basepoint", f"cell {bp} given twice")
        data[bp] = parsed
    try:
        return X, CharacterBundle(X, data)
    except BundleError as exc:
        raise DescriptorError(f"{path}.orbits", str(exc)) from None


def bundle_to_json(X: GSet, B) -> dict:
    out = {"base": gset_to_json(X), "orbits": []}
    if isinstance(B, ZeroBundle):
        return out
    if not isinstance(B, CharacterBundle):
        raise TypeError("only character bundles have a descriptor")
    for x0 in sorted(B._data):
        chars = [{str(s): str(v) for s, v in sorted(c.items())} for c in B.characters(x0)]
        out["orbits"].append({"basepoint": x0, "characters": chars})
    return out


# -- values ---------------------------------------------------------------------------

def parse_phi(v: Any, path: str = "phi") -> tuple:
    if isinstance(v, str):
        items = [s for s in v.split(",") if s.strip()]
    elif isinstance(v, list):
        items = v
    else:
        raise DescriptorError(path, "expected 'q1,q2,...' or a list")
    return tuple(parse_fraction(s, f"{path}[{i}]") for i, s in enumerate(items))


def parse_lpolynomial(v: Any, path: str = "lpoly") -> LPolynomial:
    if isinstance(v, int) and not isinstance(v, bool):
        return LPolynomial.const(v)
    if not isinstance(v, list):
        raise DescriptorError(path, "expected a list of {\"q\": .., \"c\": ..} terms or an integer")
    terms = {}
    for i, t in enumerate(v):
        q = parse_fraction(_require(t, "q", f"{path}[{i}]"), f"{path}[{i}].q")
        c = _int(_require(t, "c", f"{path}[{i}]"), f"{path}[{i}].c")
        terms[q] = terms.get(q, 0) + c
    return LPolynomial(terms)
