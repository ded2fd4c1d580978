from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from gia import (
    DomainError,
    NotALadderDimension,
    OrthogonalRange,
    binomial,
    feasible_dims,
    format_decimal,
    interference_index,
    invert_dim,
    ladder_dim,
    mg_bf,
    mg_bf_from_streams,
    mg_oia,
    pattern_efficiency,
    pattern_value,
    virtual_users,
)
from gia.ia_math import Instance


def binom_factorial(a, b):
    if b > a:
        return 0
    return factorial(a) // (factorial(b) * factorial(a - b))


def binom_product(a, b):
    num = den = 1
    for i in range(b):
        num *= a - i
        den *= i + 1
    return num // den


@pytest.mark.parametrize("a,b,expected", [
    (6, 5, 6),
    (30, 29, 30),
    (33, 29, 40920),
    (3, 5, 0),
    (0, 0, 1),
])
def test_binomial_examples(a, b, expected):
    assert binomial(a, b) == expected
    assert binom_factorial(a, b) == expected


@given(st.integers(0, 400), st.integers(0, 400))
def test_binomial_matches_oracles(a, b):
    assert binomial(a, b) == binom_factorial(a, b) == binom_product(a, b)


def test_binomial_big():
    # well beyond 64 bits
    assert binomial(200, 155) == binom_factorial(200, 155)
    assert binomial(200, 155) > 2**64


@pytest.mark.parametrize("k,N", [(3, 1), (4, 5), (7, 29), (14, 155)])
def test_interference_index(k, N):
    assert interference_index(k) == N


@pytest.mark.parametrize("k", [-1, 0, 1, 2])
def test_interference_index_rejects_small_k(k):
    with pytest.raises(DomainError):
        interference_index(k)


@pytest.mark.parametrize("k,n,m", [
    (4, 0, 7), (4, 1, 27), (4, 2, 77), (4, 3, 182),
    (7, 3, 45880),
    (3, 0, 3), (3, 1, 5), (3, 2, 7),
    (14, 0, 157),
])
def test_ladder_dim(k, n, m):
    e = ladder_dim(k, n)
    assert (e.k, e.n_star, e.m) == (k, n, m)


def test_ladder_rejects_small_k():
    with pytest.raises(DomainError):
        ladder_dim(2, 0)


@pytest.mark.parametrize("k", range(3, 11))
def test_ladder_strictly_increasing(k):
    ms = [ladder_dim(k, n).m for n in range(40)]
    assert all(a < b for a, b in zip(ms, ms[1:]))


def test_feasible_dims():
    assert [e.m for e in feasible_dims(4, 200)] == [7, 27, 77, 182]
    assert [e.m for e in feasible_dims(7, 45880)] == [31, 495, 5425, 45880]
    assert [e.m for e in feasible_dims(3, 10)] == [3, 5, 7, 9]
    assert feasible_dims(4, 6) == []


def test_feasible_dims_orthogonal_sentinel():
    dims = feasible_dims(2, 10**18)
    assert isinstance(dims, OrthogonalRange)
    assert 10**17 in dims and 0 not in dims and len(dims) == 10**18
    assert list(feasible_dims(1, 4)) == [1, 2, 3, 4]


def test_invert_dim_examples():
    assert invert_dim(4, 35853) == 15
    assert invert_dim(4, 8) is None
    assert invert_dim(3, 17) == 7
    assert invert_dim(3, 18) is None
    assert invert_dim(7, 1) is None


@given(st.integers(3, 12), st.integers(0, 300))
def test_invert_dim_roundtrip(k, n):
    e = ladder_dim(k, n)
    assert invert_dim(k, e.m) == n
    assert invert_dim(k, e.m + 1) is None or ladder_dim(k, n + 1).m == e.m + 1


@pytest.mark.parametrize("k,n,expected,shown", [
    (4, 0, Fraction(9, 7), "1.2857"),
    (3, 2, Fraction(10, 7), "1.4286"),
    (7, 3, Fraction(57, 37), "1.5405"),
])
def test_mg_bf_examples(k, n, expected, shown):
    assert mg_bf(k, n) == expected
    assert format_decimal(mg_bf(k, n), 5) == shown


def test_mg_bf_forms_agree():
    for k in range(3, 11):
        for n in range(51):
            assert mg_bf(k, n) == mg_bf_from_streams(k, n)


@settings(max_examples=200)
@given(st.integers(3, 15), st.integers(0, 10**4))
def test_mg_bf_bounds_and_monotone(k, n):
    r = mg_bf(k, n)
    assert 1 < r < Fraction(k, 2)
    assert mg_bf(k, n + 1) > r


def test_mg_bf_asymptote_k4():
    assert Fraction(2) - mg_bf(4, 10**6) < Fraction(1, 10**5)


def test_mg_bf_rejects_small_k():
    with pytest.raises(DomainError):
        mg_bf(2, 0)


def test_mg_oia():
    assert mg_oia(3, 1) == (3, Fraction(4, 3))
    assert mg_oia(4, 1) == (33, Fraction(35, 33))
    _, r = mg_oia(3, 10**6)
    assert Fraction(3, 2) - r < Fraction(1, 10**5)
    with pytest.raises(DomainError):
        mg_oia(2, 1)


M = 45880


@pytest.mark.parametrize("k,m,shown", [
    (4, 35853, "0.6759"),
    (3, 17, "0.0001744"),
    (5, 44200, "0.8092"),
    (4, 5005, "0.08727"),
])
def test_pattern_value_examples(k, m, shown):
    assert format_decimal(pattern_value(k, m, M), 4) == shown


def test_pattern_value_exact():
    assert pattern_value(3, 17, M) == Fraction(8, M)
    assert pattern_value(2, 10, M) == 0
    assert pattern_value(1, 10, M) == 0
    assert pattern_value(3, 7, M) == Fraction(3, M)
    assert pattern_value(4, 7, M) == Fraction(2, M)


@pytest.mark.parametrize("k,m,shown", [
    (4, 35853, "0.000018851"),
    (3, 17, "0.000010257"),
    (7, 45880, "0.000011782"),
    (4, 5005, "0.000017437"),
])
def test_pattern_efficiency_examples(k, m, shown):
    assert format_decimal(pattern_efficiency(k, m, M), 5) == shown


def test_pattern_value_errors():
    with pytest.raises(NotALadderDimension):
        pattern_value(4, 8, 100)
    with pytest.raises(DomainError):
        pattern_value(4, 27, 10)


@pytest.mark.parametrize("k", range(3, 8))
def test_pattern_value_closed_form(k):
    N = interference_index(k)
    for n in range(30):
        m = ladder_dim(k, n).m
        big_m = m + 13
        v = pattern_value(k, m, big_m)
        assert v == Fraction(m, big_m) * Fraction((k - 2) * (n + 1), 2 * n + N + 2)
        assert pattern_efficiency(k, m, big_m) == v / m
        if k == 3:
            assert v == Fraction(n + 1, big_m)


def test_virtual_users():
    assert virtual_users(7, 2) == 14
    assert virtual_users(7, 1) == 7
    assert virtual_users(3, 4) == 12
    assert Instance(7, 2, 157).effective_users == 14
    with pytest.raises(DomainError):
        Instance(0, 1, 5)


def test_decimal_rounding_half_even():
    assert format_decimal(Fraction(1, 8), 2) == "0.12"
    assert format_decimal(Fraction(3, 8), 2) == "0.38"
    assert format_decimal(Fraction(10613, 5735)) == "1.85057"
