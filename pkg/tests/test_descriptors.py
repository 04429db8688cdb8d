import json
from fractions import Fraction

import pytest

from orbichar.acceptance import sign_bundle
from orbichar.bundles import ZeroBundle, class_of_vect
from orbichar.descriptors import (DescriptorError, bundle_to_json, gset_to_json, group_to_json,
                                  parse_bundle, parse_fraction, parse_group, parse_gset,
                                  parse_lpolynomial, parse_phi)
from orbichar.groups import (direct_product, group_from_permutations, group_from_table, named_group,
                             wreath_product)
from orbichar.gsets import cosets, disjoint_union, point, regular
from orbichar.k0fgr import class_of
from orbichar.lpoly import LPolynomial

GROUPS = [
    named_group("S3"),
    wreath_product(named_group("C2"), 2),
    direct_product(named_group("C2"), named_group("C3")),
    group_from_table([[(a + b) % 3 for b in range(3)] for a in range(3)]),
    group_from_permutations(4, [(1, 0, 3, 2), (2, 3, 0, 1)]),
]


@pytest.mark.parametrize("G", GROUPS)
def test_group_round_trip(G):
    d = json.loads(json.dumps(group_to_json(G)))
    H = parse_group(d)
    assert H.order == G.order
    assert H.perms == G.perms


def test_group_forms():
    assert parse_group("C4").order == 4
    assert parse_group({"type": "product", "factors": ["C2", "C2"]}).order == 4
    assert parse_group({"type": "wreath", "base": "C3", "n": 2}).order == 18


@pytest.mark.parametrize("d,path", [
    ({"type": "named", "name": "Z7x"}, "group.name"),
    ({"type": "permutation", "degree": 3, "generators": [[0, 0, 1]]}, "group.generators[0]"),
    ({"type": "table", "mul": [[0, 1], [0, 1]]}, "group.mul"),
    ({"type": "cube"}, "group.type"),
    ({"type": "wreath", "base": "C2", "n": -1}, "group.n"),
])
def test_group_errors_name_the_field(d, path):
    with pytest.raises(DescriptorError) as info:
        parse_group(d)
    assert info.value.path == path


def test_gset_round_trip():
    S3 = named_group("S3")
    X = disjoint_union(cosets(S3, S3.subgroup_generated([1])), regular(S3, 2))
    d = json.loads(json.dumps(gset_to_json(X)))
    Y = parse_gset(d)
    assert class_of(Y) == class_of(X)
    assert gset_to_json(Y) == d


def test_gset_presets():
    assert len(parse_gset({"group": "S3", "preset": "regular"})) == 6
    assert class_of(parse_gset({"group": "C2", "preset": "point", "dim": 1})) == \
        class_of(point(named_group("C2"), 1))
    assert len(parse_gset({"group": "C2", "preset": "trivial", "size": 3})) == 3


@pytest.mark.parametrize("d,path", [
    ({"cells": []}, "gset.group"),
    ({"group": "C2", "preset": "cone"}, "gset.preset"),
    ({"group": "C2", "preset": "trivial"}, "gset.size"),
    ({"group": "C2", "cells": [{"dim": 0}] * 3, "action": {"0": [1, 2, 0]}}, "gset.action"),
    ({"group": "C2", "cells": [{"dim": 0}], "action": {"3": [0]}}, "gset.action"),
    ({"group": "C2", "cells": [{"dim": -1}]}, "gset.cells[0].dim"),
    ({"group": "C2", "cells": [{"dim": 0}], "action": {"0": "swap"}}, "gset.action.0"),
])
def test_gset_errors_name_the_field(d, path):
    with pytest.raises(DescriptorError) as info:
        parse_gset(d)
    assert info.value.path == path


def test_bundle_round_trip():
    Z, B = sign_bundle()
    d = json.loads(json.dumps(bundle_to_json(Z, B)))
    Y, E = parse_bundle(d)
    assert class_of_vect(Y, E) == class_of_vect(Z, B)
    assert bundle_to_json(Y, E) == d


def test_empty_orbits_give_a_zero_bundle():
    X, B = parse_bundle({"base": {"group": "C2", "preset": "point"}})
    assert isinstance(B, ZeroBundle)
    assert bundle_to_json(X, B)["orbits"] == []


@pytest.mark.parametrize("orbits,path", [
    ([{"basepoint": 3, "characters": []}], "bundle.orbits[0].basepoint"),
    ([{"characters": []}], "bundle.orbits[0].basepoint"),
    ([{"basepoint": 0, "characters": [{"x": "1/2"}]}], "bundle.orbits[0].characters[0]"),
    ([{"basepoint": 0, "characters": [{"1": 0.5}]}], "bundle.orbits[0].characters[0].1"),
    ([{"basepoint": 0, "characters": [{"1": "1/3"}]}], "bundle.orbits"),
])
def test_bundle_errors_name_the_field(orbits, path):
    with pytest.raises(DescriptorError) as info:
        parse_bundle({"base": {"group": "C2", "preset": "point"}, "orbits": orbits})
    assert info.value.path == path


def test_values():
    assert parse_fraction("3/6") == Fraction(1, 2)
    assert parse_fraction(2) == 2
    for bad in (0.5, True, "x"):
        with pytest.raises(DescriptorError):
            parse_fraction(bad)
    assert parse_phi("1, 1/2") == (1, Fraction(1, 2))
    assert parse_phi([0, "2"]) == (0, 2)
    assert parse_lpolynomial(3) == LPolynomial.const(3)
    p = LPolynomial({Fraction(0): 1, Fraction(1, 2): -2})
    assert parse_lpolynomial([{"q": "0", "c": 1}, {"q": "1/2", "c": -2}]) == p
    with pytest.raises(DescriptorError):
        parse_lpolynomial("L")
