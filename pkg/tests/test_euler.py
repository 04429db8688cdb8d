import pytest

from orbichar.euler import chi_k_recursive, chi_k_tuples, euler_char, verify_induction_invariance
from orbichar.groups import named_group
from orbichar.gsets import cosets, empty, point, regular, trivial_gset, wreath_power
from orbichar.isomorphism import find_embedding
from orbichar.acceptance import battery


def test_plain_euler_characteristic():
    C2 = named_group("C2")
    assert euler_char(empty(C2)) == 0
    assert euler_char(trivial_gset(C2, 4)) == 4
    X = regular(C2)
    assert euler_char(wreath_power(X, 3)) == euler_char(X) ** 3


def test_point_values():
    S3, C2 = named_group("S3"), named_group("C2")
    assert chi_k_tuples(point(S3), 1) == 3
    assert chi_k_tuples(point(S3), 2) == 8
    assert chi_k_recursive(point(C2), 1) == 2
    assert chi_k_recursive(point(C2), 2) == 4
    assert chi_k_recursive(cosets(S3, S3.subgroup_generated([1])), 0) == 1


def test_trivial_group_gives_plain_count():
    X = trivial_gset(named_group("trivial"), 5)
    for k in range(1, 4):
        assert chi_k_tuples(X, k) == 5


def test_k_bounds():
    X = point(named_group("C2"))
    with pytest.raises(ValueError):
        chi_k_recursive(X, -1)
    with pytest.raises(ValueError):
        chi_k_recursive(X, 5)
    with pytest.raises(ValueError):
        chi_k_tuples(X, 0)


@pytest.mark.parametrize("name,X", battery()[::3])
def test_definitions_agree(name, X):
    for k in range(1, 4):
        assert chi_k_tuples(X, k) == chi_k_recursive(X, k)


def test_induction_invariance_examples():
    S3, C2 = named_group("S3"), named_group("C2")
    emb = find_embedding(C2, S3).map
    rep = verify_induction_invariance(point(C2), S3, emb, 3)
    assert rep.passed
    assert [row["recursive"] for row in rep.values] == [[1, 1], [2, 2], [4, 4], [8, 8]]
    rep = verify_induction_invariance(regular(C2), S3, emb, 2)
    assert rep.passed and all(row["recursive"] == [1, 1] for row in rep.values)
    assert verify_induction_invariance(point(S3), S3, list(S3.elements()), 2).passed
