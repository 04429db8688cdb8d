from fractions import Fraction

import pytest

from orbichar.acceptance import battery, sign_bundle
from orbichar.bundles import (BundleError, CharacterBundle, ZeroBundle, age_stratify, age_wreath,
                              class_of_vect, generalized_chi, generalized_chi_class, induced_bundle,
                              lambda_vect_series, phi_k, product_bundle, rank_stratify,
                              verify_wreath_bundle_theorem, wreath_bundle, zeta_vect_series)
from orbichar.euler import chi_k_recursive
from orbichar.groups import commuting_tuples, named_group, wreath_product
from orbichar.gsets import disjoint_union, point, regular
from orbichar.isomorphism import find_embedding
from orbichar.lpoly import LPolynomial
from orbichar.powerstructures import kapranov_zeta_model

C2 = named_group("C2")
HALF = LPolynomial.L(Fraction(1, 2))
ONE = LPolynomial.const(1)


def test_sign_character_age():
    Z, B = sign_bundle()
    assert B.age(0, 1) == Fraction(1, 2)
    assert B.age(0, 0) == 0
    assert B.check()


def test_ages_add_over_summands():
    C3 = named_group("C3")
    g = C3.gens[0]
    Y = point(C3)
    B = CharacterBundle(Y, {0: [{g: "1/3"}, {g: "1/3"}]})
    assert B.age(0, g) == Fraction(2, 3)
    assert B.age(0, C3.mul(g, g)) == Fraction(4, 3)


def test_age_wreath_on_the_square_of_the_sign_bundle():
    Z, B = sign_bundle()
    P, E = wreath_bundle(Z, B, 2)
    parts = P.group.info["parts"]
    ages = {parts[w]: age_wreath(E, 0, w) for w in range(P.group.order)}
    assert ages[((0, 0), (0, 1))] == 0
    assert ages[((0, 1), (0, 1))] == Fraction(1, 2)
    assert ages[((1, 1), (0, 1))] == 1
    # a swap: eigenvalues are the square roots of the cycle product
    assert ages[((0, 0), (1, 0))] == Fraction(1, 2)
    assert ages[((0, 1), (1, 0))] == 1
    for w in range(P.group.order):
        assert age_wreath(E, 0, w) == E.age(0, w)
    assert E.check()


def test_eigenphases_require_a_fixed_cell():
    X = regular(C2)
    with pytest.raises(BundleError):
        ZeroBundle(X).eigenphases(0, 1)


def test_stratifications():
    Z, B = sign_bundle()
    strata = age_stratify(Z, B, 1)
    assert list(strata) == [Fraction(1, 2)] and len(strata[Fraction(1, 2)]) == 1
    X = disjoint_union(point(C2), regular(C2))
    ranks = rank_stratify(X, CharacterBundle(X, {0: [{1: "1/2"}]}))
    assert {d: len(S) for d, S in ranks.items()} == {0: 2, 1: 1}


def test_generalized_chi_of_the_sign_point():
    Z, B = sign_bundle()
    assert generalized_chi(Z, B, 0) == ONE
    assert generalized_chi(Z, B, 1, [1]) == ONE + HALF
    assert generalized_chi(Z, B, 1, [0]) == ONE * 2
    assert generalized_chi(Z, B, 2, [1, 1]) == (ONE + HALF) * (ONE + HALF)
    with pytest.raises(ValueError):
        generalized_chi(Z, B, 2, [1])


@pytest.mark.parametrize("name,X", battery()[::4])
def test_zero_bundle_recovers_chi_k(name, X):
    X = X.standalone()
    for k in range(3):
        assert generalized_chi(X, ZeroBundle(X), k, [1] * k) == LPolynomial.const(chi_k_recursive(X, k))


def test_phi_k():
    assert phi_k((2, 3), (1, 1)) == 5
    assert phi_k((1,), (7,)) == 0
    assert phi_k((3,), ("1/2",)) == 1
    with pytest.raises(ValueError):
        phi_k((1, 2), (1,))


@pytest.mark.parametrize("phi", [0, 1, "1/2"])
def test_wreath_theorem_at_k1(phi):
    Z, B = sign_bundle()
    rep = verify_wreath_bundle_theorem(Z, B, 1, [phi], 3)
    assert rep.passed, rep.to_json()


def test_wreath_theorem_with_a_zero_bundle():
    Z = point(C2)
    rep = verify_wreath_bundle_theorem(Z, ZeroBundle(Z), 2, [1, 1], 3)
    assert rep.passed
    # chi^(2)(pt, C2 wr S_n) counts commuting triples up to the group order
    for n in range(1, 4):
        W = wreath_product(C2, n)
        assert rep.lhs[n] * W.order == LPolynomial.const(commuting_tuples(W, 3))


def test_vect_classes():
    Z, B = sign_bundle()
    sign = class_of_vect(Z, B)
    trivial = class_of_vect(Z, CharacterBundle(Z, {0: [{1: 0}]}))
    assert sign != trivial and sign.forget() == trivial.forget()
    S3 = named_group("S3")
    I, IB = induced_bundle(Z, B, S3, find_embedding(C2, S3).map)
    assert class_of_vect(I, IB) == sign
    assert generalized_chi_class(sign, 1, [1]) == ONE + HALF
    assert generalized_chi_class(sign * sign, 2, [1, 1]) == generalized_chi_class(sign, 2, [1, 1]) ** 2


def test_product_bundle_class_is_the_product():
    Z, B = sign_bundle()
    C3 = named_group("C3")
    Y, BY = sign_bundle(C3, C3.gens[0], "1/3")
    P, PB = product_bundle(Z, B, Y, BY)
    assert class_of_vect(P, PB) == class_of_vect(Z, B) * class_of_vect(Y, BY)


def test_character_validation():
    Z = point(C2)
    with pytest.raises(BundleError):
        CharacterBundle(Z, {0: [{1: "1/3"}]})
    with pytest.raises(BundleError):
        CharacterBundle(Z, {5: [{1: "1/2"}]})
    with pytest.raises(BundleError):
        CharacterBundle(Z, {0: [{}]})


def test_vect_series():
    Z, B = sign_bundle()
    zeta = zeta_vect_series(Z, B, 3)
    # forgetting the bundle gives the plain zeta series
    assert [c.forget() for c in zeta.coeffs] == list(kapranov_zeta_model(Z, 3).coeffs)
    lam = lambda_vect_series(Z, B, 2)
    assert lam.coeffs[1] == class_of_vect(Z, B) and not lam.coeffs[2]


def test_zeta_vect_series_is_induction_invariant():
    Z, B = sign_bundle()
    S3 = named_group("S3")
    I, IB = induced_bundle(Z, B, S3, find_embedding(C2, S3).map)
    assert zeta_vect_series(I, IB, 2) == zeta_vect_series(Z, B, 2)
