import itertools

import pytest

from orbichar import config
from orbichar.config import SizeBoundError
from orbichar.groups import (commuting_tuples, direct_product, group_from_permutations,
                             group_from_table, named_group, twisted_product_group, wreath_element,
                             wreath_product)
from orbichar.isomorphism import are_isomorphic, automorphisms, find_embedding

NAMES = ["trivial", "C2", "C3", "C4", "V4", "S3", "C6", "D4", "Q8", "S4"]


def test_closure_orders():
    assert group_from_permutations(3, [(1, 0, 2), (1, 2, 0)]).order == 6
    assert group_from_permutations(1, []).order == 1
    assert group_from_permutations(4, [(1, 0, 3, 2)]).order == 2


def test_bad_generator_rejected():
    with pytest.raises(ValueError):
        group_from_permutations(3, [(0, 0, 1)])


@pytest.mark.parametrize("name", NAMES)
def test_group_axioms(name):
    assert named_group(name).check_axioms()


@pytest.mark.parametrize("name", NAMES + ["C2xS3"])
def test_class_equation(name):
    G = named_group(name)
    classes = G.conjugacy_classes()
    assert sum(len(c) for c in classes) == G.order
    for c in classes:
        for g in c.members:
            assert len(c) * G.centralizer(g).order == G.order


@pytest.mark.parametrize("name", NAMES)
def test_commuting_pairs_equal_centralizer_sum(name):
    G = named_group(name)
    brute = sum(1 for a in G.elements() for b in G.elements() if G.commute(a, b))
    assert commuting_tuples(G, 2) == brute
    assert commuting_tuples(G, 2) == sum(G.centralizer(g).order for g in G.elements())
    assert commuting_tuples(G, 2) == G.order * len(G.conjugacy_classes())


def test_commuting_tuple_counts():
    assert commuting_tuples(named_group("C2"), 2) == 4
    S3 = named_group("S3")
    assert commuting_tuples(S3, 2) == 18
    assert commuting_tuples(S3, 3) == 48


def test_conjugacy_and_centralizers_of_s3():
    S3 = named_group("S3")
    assert sorted(len(c) for c in S3.conjugacy_classes()) == [1, 2, 3]
    three_cycle = next(a for a in S3.elements() if S3.element_order(a) == 3)
    assert S3.centralizer(three_cycle).order == 3
    assert S3.centralizer(0).order == 6
    assert S3.subgroup_generated([0]).order == 1
    assert S3.subgroup_generated([three_cycle]).order == 3
    transpositions = [a for a in S3.elements() if S3.element_order(a) == 2]
    assert S3.subgroup_generated(transpositions[:2]).order == 6


def test_abelian_classes_are_singletons():
    G = named_group("C2xC4")
    assert len(G.conjugacy_classes()) == G.order
    assert all(G.centralizer(g).order == G.order for g in G.elements())


def test_direct_products():
    V = direct_product(named_group("C2"), named_group("C2"))
    assert V.order == 4 and all(V.element_order(a) == 2 for a in range(1, 4))
    S3 = named_group("S3")
    assert are_isomorphic(direct_product(S3, named_group("trivial")), S3) is not None
    P = direct_product(S3, named_group("C2"))
    assert P.order == 12 and len(P.conjugacy_classes()) == 6


def test_wreath_orders_and_classes():
    W = wreath_product(named_group("C2"), 2)
    assert W.order == 8
    assert len(W.conjugacy_classes()) == 5
    assert are_isomorphic(W, named_group("D4")) is not None


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_wreath_of_trivial_is_symmetric(n):
    assert are_isomorphic(wreath_product(named_group("trivial"), n), named_group(f"S{n}")) is not None


def test_wreath_multiplication_convention():
    # ((g), s)((g'), s') = ((g_i g'_{s^-1(i)})_i, s s') with s' applied first
    C3 = named_group("C3")
    W = wreath_product(C3, 3)
    parts = W.info["parts"]
    for a, b in [(5, 77), (100, 31), (160, 9)]:
        (ga, sa), (gb, sb) = parts[a], parts[b]
        sa_inv = [0] * 3
        for i, j in enumerate(sa):
            sa_inv[j] = i
        gs = tuple(C3.mul(ga[i], gb[sa_inv[i]]) for i in range(3))
        sigma = tuple(sa[sb[i]] for i in range(3))
        assert W.mul(a, b) == wreath_element(W, gs, sigma)


def test_twisted_groups():
    T, C2 = named_group("trivial"), named_group("C2")
    assert are_isomorphic(twisted_product_group(T, [(T, 3)]), named_group("S3")) is not None
    assert are_isomorphic(twisted_product_group(C2, [(T, 1)]), C2) is not None
    tw = twisted_product_group(T, [(C2, 2)])
    assert tw.order == 8 and are_isomorphic(tw, wreath_product(C2, 2)) is not None


def test_twisted_group_does_not_alter_cached_groups():
    C2 = named_group("C2")
    W = wreath_product(direct_product(C2, C2), 1)
    before = dict(W.info)
    twisted_product_group(C2, [(C2, 1)])
    assert W.info == before


def test_isomorphism_tests():
    deg4 = group_from_permutations(4, [(1, 0, 3, 2)])
    assert are_isomorphic(deg4, named_group("C2")) is not None
    assert are_isomorphic(named_group("C4"), named_group("V4")) is None
    iso = are_isomorphic(named_group("D4"), wreath_product(named_group("C2"), 2))
    assert iso is not None and iso.verify()


@pytest.mark.parametrize("name", NAMES[:8])
def test_isomorphism_reflexive(name):
    G = named_group(name)
    iso = are_isomorphic(G, G)
    assert iso is not None and iso.verify()


def test_embeddings_and_automorphisms():
    assert find_embedding(named_group("C4"), named_group("S3")) is None
    emb = find_embedding(named_group("V4"), named_group("D4"))
    assert emb is not None and emb.verify()
    assert len(automorphisms(named_group("S3"))) == 6
    assert len(automorphisms(named_group("V4"))) == 6


def test_table_groups():
    mul = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    assert are_isomorphic(group_from_table(mul), named_group("C4")) is not None
    with pytest.raises(ValueError):
        group_from_table([[0, 1], [0, 1]])


def test_size_bound():
    with config.override(max_group_order=100):
        with pytest.raises(SizeBoundError):
            wreath_product(named_group("S3"), 3)


def test_associativity_of_small_wreath():
    W = wreath_product(named_group("C2"), 2)
    for a, b, c in itertools.product(W.elements(), repeat=3):
        assert W.mul(W.mul(a, b), c) == W.mul(a, W.mul(b, c))
