import pytest
from hypothesis import given, strategies as st

from artin_schreier.numtheory import Factorization, valuation, is_prime, factor, legendre_symbol, jacobi_from_factors


def test_valuation_examples():
    assert valuation(3, 54) == 3
    assert valuation(5, 7) == 0
    assert valuation(2, 48) == 4


def test_valuation_rejects_bad_input():
    with pytest.raises(ValueError):
        valuation(1, 5)
    with pytest.raises(ValueError):
        valuation(3, 0)


def test_legendre_examples():
    assert legendre_symbol(3, 5) == -1
    assert legendre_symbol(1, 7) == 1
    assert legendre_symbol(10, 5) == 0
    with pytest.raises(ValueError):
        legendre_symbol(1, 9)


def test_factor_examples():
    assert list(factor(60)) == [(2, 2), (3, 1), (5, 1)]
    assert list(factor(1)) == []
    assert list(factor(27)) == [(3, 3)]
    assert factor(1000003).factors == ((1000003, 1),)


def test_factorization_validates():
    with pytest.raises(ValueError):
        Factorization(12, ((2, 1), (3, 1)))
    with pytest.raises(ValueError):
        Factorization(12, ((4, 1), (3, 1)))


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@given(st.integers(1, 10**9))
def test_factor_reassembles(n):
    fac = factor(n)
    prod = 1
    for t, a in fac:
        assert is_prime(t)
        assert valuation(t, n) == a
        prod *= t**a
    assert prod == n


@given(st.integers(-50, 50), st.sampled_from([3, 5, 7, 11, 13]))
def test_legendre_is_multiplicative_and_euler(a, t):
    squares = {x * x % t for x in range(1, t)}
    expected = 0 if a % t == 0 else (1 if a % t in squares else -1)
    assert legendre_symbol(a, t) == expected
    assert jacobi_from_factors(a, factor(t * t * t)) == expected**3
