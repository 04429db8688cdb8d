import random
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from orbichar import config
from orbichar.config import SizeBoundError
from orbichar.groups import named_group, symmetric_group, wreath_product
from orbichar.gsets import cosets, induced_gset, point, product, regular, trivial_gset
from orbichar.isomorphism import find_embedding
from orbichar.k0fgr import (REGISTRY, FgrClass, chi_k_class, class_of, gp_box, map_i, map_p,
                            to_lpolynomial)
from orbichar.lpoly import LPolynomial

POOL = ["trivial", "C2", "C3", "C4", "V4", "S3", "C6", "D4"]


def pt(name, dim=0, coeff=1):
    return FgrClass.point(named_group(name), dim, coeff)


def test_class_of_examples():
    S3 = named_group("S3")
    assert class_of(cosets(S3, S3.subgroup_generated([1]))) == pt("C2")
    assert class_of(regular(S3)) == FgrClass.one()
    assert class_of(trivial_gset(named_group("C2"), 2)) == pt("C2", coeff=2)
    assert pt("C2") != FgrClass.one() * 2


def test_ring_examples():
    a = pt("C2")
    assert a * FgrClass.one() == a
    assert a * a == pt("V4") != pt("C4")
    assert FgrClass.L(1) * FgrClass.L(2) == FgrClass.L(3)


def test_labels():
    assert REGISTRY.label(REGISTRY.handle(named_group("S3"))) == "S3"
    assert REGISTRY.label(REGISTRY.handle(wreath_product(named_group("C2"), 2))) == "D4"
    assert str(pt("C2", 1, 2) - pt("trivial")) == "-[trivial] + 2*[C2]*L"


def test_induction_relation():
    for sub, sup in (("C2", "S3"), ("C3", "S3"), ("V4", "D4"), ("C2", "C4")):
        G, H = named_group(sub), named_group(sup)
        emb = find_embedding(G, H).map
        for Z in (point(G), regular(G), trivial_gset(G, 2, [0, 1])):
            assert class_of(induced_gset(Z, H, emb)) == class_of(Z)


def test_relabeling_invariance():
    C2 = named_group("C2")
    X = trivial_gset(C2, 3, [0, 1, 2])
    Y = trivial_gset(C2, 3, [2, 0, 1])
    assert class_of(X) == class_of(Y)


def test_maps_i_and_p():
    rng = random.Random(1)
    for _ in range(20):
        x = LPolynomial({rng.randint(0, 3): rng.randint(-3, 3) for _ in range(3)})
        assert to_lpolynomial(map_i(x)) == x
    assert map_p(pt("C2")) == FgrClass.one()
    assert map_p(class_of(regular(named_group("S3")))) == FgrClass.one()
    with pytest.raises(ValueError):
        map_i(pt("C2"))


def test_gp_box():
    for m, n in ((1, 1), (1, 2), (2, 1), (2, 2), (1, 3)):
        Sm, Sn = symmetric_group(m), symmetric_group(n)
        for X, Y in ((regular(Sm), point(Sn)), (trivial_gset(Sm, 2, [0, 1]), regular(Sn))):
            B = gp_box(X, Y)
            assert len(B) == comb(m + n, n) * len(X) * len(Y)
            assert class_of(B) == class_of(X) * class_of(Y)


def test_chi_of_points():
    assert chi_k_class(pt("S3"), 1) == 3
    assert chi_k_class(pt("S3"), 2) == 8
    for k in range(4):
        assert chi_k_class(FgrClass.one(), k) == 1


def test_json_round_trip():
    a = pt("S3", 2, -3) + pt("C2", 0, 5) + pt("Q8", 1)
    assert FgrClass.from_json(a.to_json()) == a
    assert a.to_json() == FgrClass.from_json(a.to_json()).to_json()


def test_registry_size_bound():
    with config.override(max_iso_order=8):
        with pytest.raises(SizeBoundError):
            REGISTRY._lookup(named_group("S4"))


@st.composite
def classes(draw, pool=POOL):
    acc = FgrClass()
    for _ in range(draw(st.integers(0, 3))):
        acc = acc + pt(draw(st.sampled_from(pool)), draw(st.integers(0, 2)), draw(st.integers(-3, 3)))
    return acc


# triple products must stay within the isomorphism bound (order <= 64)
SMALL = classes(["trivial", "C2", "C3", "C4", "V4"])


@settings(max_examples=60, deadline=None)
@given(SMALL, SMALL, SMALL)
def test_commutative_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == FgrClass.zero()
    assert a * FgrClass.one() == a


@settings(max_examples=40, deadline=None)
@given(classes(), classes(), st.integers(0, 3))
def test_chi_is_multiplicative(a, b, k):
    assert chi_k_class(a * b, k) == chi_k_class(a, k) * chi_k_class(b, k)
    assert chi_k_class(a + b, k) == chi_k_class(a, k) + chi_k_class(b, k)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(POOL), st.sampled_from(POOL))
def test_product_classes_match_product_gsets(g, h):
    X, Y = point(named_group(g)), point(named_group(h))
    assert class_of(product(X, Y)) == class_of(X) * class_of(Y)
