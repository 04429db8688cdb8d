from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from orbichar.lpoly import LPolynomial
from orbichar.series import (LPOLYNOMIALS, TruncatedSeries, check_finite_determinacy,
                             check_power_axioms, configuration_structure_int, lambda_factorize,
                             opposite_lambda, partitions_by_multiplicity, power_standard_int,
                             power_via_lambda, series_from_ints, zeta_power_L, zeta_structure_int)

N = 6


def s(*coeffs, n=N):
    return series_from_ints((list(coeffs) + [0] * (n + 1))[:n + 1], n)


int_series = st.lists(st.integers(-3, 3), min_size=N, max_size=N).map(lambda c: s(1, *c))
exponents = st.integers(-4, 4)


def test_series_basics():
    assert s(1, -1) * s(*([1] * (N + 1))) == s(1)
    A = s(1, 2, -1, 3)
    assert A.inverse().inverse() == A
    assert s(1, 1).substitute_power(2) == s(1, 0, 1)
    assert s(1, 1).inverse() == s(*[(-1) ** n for n in range(N + 1)])


def test_standard_power():
    assert power_standard_int(s(1, -1), -2) == s(*[n + 1 for n in range(N + 1)])
    A = s(1, 3, -2)
    assert power_standard_int(A, 0) == s(1)
    assert power_standard_int(A, 1) == A


def test_partitions():
    parts = list(partitions_by_multiplicity(4))
    assert len(parts) == 5
    assert all(sum(i * k for i, k in p.items()) == 4 for p in parts)
    assert len(list(partitions_by_multiplicity(4, max_part=1))) == 1


def test_factorization_examples():
    Z = zeta_structure_int()
    assert lambda_factorize(Z(3, N), Z).b == (3, 0, 0, 0, 0, 0)
    assert lambda_factorize(s(1, 1, 1), Z).b == (1, 0, -1, 0, 0, 0)
    assert lambda_factorize(s(1), Z).b == (0,) * N


def test_zeta_power_of_geometric_series():
    Z = zeta_structure_int()
    for m in range(-3, 4):
        expected = s(*[Z(m, N).coeffs[n] for n in range(N + 1)])
        assert power_via_lambda(s(*([1] * (N + 1))), m, Z) == expected == power_standard_int(s(*([1] * (N + 1))), m)


def test_opposite_structure():
    Z, C = zeta_structure_int(), configuration_structure_int()
    opp = opposite_lambda(Z)
    for m in range(-3, 4):
        assert opp(m, N) == C(m, N)
    double = opposite_lambda(opp)
    for m in range(-3, 4):
        assert double(m, N) == Z(m, N)


@settings(max_examples=50, deadline=None)
@given(int_series, int_series, exponents, exponents, st.integers(2, 3))
def test_power_axioms_over_integers(A, B, m, n, k):
    for L in (zeta_structure_int(), configuration_structure_int()):
        res = check_power_axioms(lambda S, e: power_via_lambda(S, e, L), A, B, m, n, k=k)
        assert all(res.values()), res
    assert all(check_power_axioms(power_standard_int, A, B, m, n, k=k).values())


@settings(max_examples=50, deadline=None)
@given(int_series, exponents)
def test_factorization_powers_equal_standard_power(A, m):
    ref = power_standard_int(A, m)
    assert power_via_lambda(A, m, zeta_structure_int()) == ref
    assert power_via_lambda(A, m, configuration_structure_int()) == ref
    assert check_finite_determinacy(power_standard_int, A, m)


@settings(max_examples=50, deadline=None)
@given(int_series, st.sampled_from(["zeta", "configuration"]))
def test_factorization_reconstructs(A, which):
    L = zeta_structure_int() if which == "zeta" else configuration_structure_int()
    assert lambda_factorize(A, L).reconstruct(N) == A


@settings(max_examples=30, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_lambda_structures_are_additive_to_multiplicative(a, b):
    for L in (zeta_structure_int(), configuration_structure_int()):
        assert L(a + b, N) == L(a, N) * L(b, N)


lpolys = st.dictionaries(st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1), Fraction(3, 2)]),
                         st.integers(-2, 2), max_size=2).map(LPolynomial)


def test_zeta_L_examples():
    Z = zeta_power_L()
    assert Z(LPolynomial.const(1), 4) == TruncatedSeries(LPOLYNOMIALS, [LPolynomial.const(1)] * 5, 4)
    assert list(Z(LPolynomial.L(1), 4).coeffs) == [LPolynomial.L(n) for n in range(5)]


@settings(max_examples=30, deadline=None)
@given(lpolys, lpolys)
def test_zeta_L_additive(a, b):
    Z = zeta_power_L()
    assert Z(a + b, 4) == Z(a, 4) * Z(b, 4)


@settings(max_examples=30, deadline=None)
@given(lpolys)
def test_zeta_L_shift_identity(a):
    # zeta_{L^q a}(t) = zeta_a(L^q t)
    Z = zeta_power_L()
    lhs = Z(a * LPolynomial.L(Fraction(1, 2)), 4)
    rhs = Z(a, 4)
    shifted = [c.shift(Fraction(n, 2)) for n, c in enumerate(rhs.coeffs)]
    assert list(lhs.coeffs) == shifted


@settings(max_examples=25, deadline=None)
@given(st.lists(lpolys, min_size=4, max_size=4), st.lists(lpolys, min_size=4, max_size=4),
       lpolys, lpolys)
def test_power_axioms_over_L(ca, cb, m, n):
    one = LPolynomial.const(1)
    A = TruncatedSeries(LPOLYNOMIALS, [one] + ca, 4)
    B = TruncatedSeries(LPOLYNOMIALS, [one] + cb, 4)
    Z = zeta_power_L()
    res = check_power_axioms(lambda S, e: power_via_lambda(S, e, Z), A, B, m, n,
                             zero_exp=LPolynomial(), one_exp=one)
    assert all(res.values()), res


def test_power_requires_constant_term_one():
    with pytest.raises(ValueError):
        power_standard_int(s(2, 1), 3)
    with pytest.raises(ValueError):
        lambda_factorize(s(0, 1), zeta_structure_int())
