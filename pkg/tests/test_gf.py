import random

import pytest
from hypothesis import given, settings, strategies as st

from artin_schreier.gf import (prime_field, extension, field_tower, find_irreducible, is_irreducible,
                               frobenius, trace, quadratic_character, upsilon, enumerate_field,
                               element_to_json, format_element, parse_element, EnumerationCapError,
                               FieldMismatch)


def test_canonical_moduli():
    F3, F5 = prime_field(3), prime_field(5)
    assert find_irreducible(F3, 3) == (1, 2, 0, 1)
    assert find_irreducible(F3, 2) == (1, 0, 1)
    assert find_irreducible(F5, 2) == (2, 0, 1)


def test_irreducibility():
    F3 = prime_field(3)
    assert is_irreducible(F3, (1, 0, 1))
    assert not is_irreducible(F3, (2, 0, 1))  # x^2 - 1
    with pytest.raises(ValueError):
        extension(F3, modulus=(2, 0, 1))


def test_frobenius_examples():
    F9 = extension(prime_field(3), 2)
    b = F9.gen()
    assert frobenius(b) == F9([0, 2])
    assert frobenius(F9.one(), 5) == F9.one()
    E = extension(F9, 3)
    x = E.element(500)
    assert frobenius(x, 3) == x


def test_trace_examples():
    F9 = extension(prime_field(3), 2)
    assert trace(F9.gen()) == prime_field(3)(0)
    assert trace(F9.one()) == prime_field(3)(2)
    for x in enumerate_field(F9):
        assert trace(x) == (x + frobenius(x)).in_base()


def test_quadratic_character_examples(F27):
    assert quadratic_character(prime_field(3)(0)) == 0
    assert quadratic_character(prime_field(3)(2)) == -1
    # a has order 26 in F_27, and odd powers of a generator are nonsquares
    a = F27.gen()
    assert all(a**k != F27.one() for k in (2, 13))
    assert quadratic_character(a) == -1


def test_upsilon_examples(F27):
    F3 = prime_field(3)
    assert upsilon(F3(0)) == 2
    assert upsilon(F3(1)) == -1
    assert upsilon(F27.zero()) == 26


def test_enumeration():
    F3 = prime_field(3)
    assert [x.raw for x in enumerate_field(F3)] == [0, 1, 2]
    F9 = extension(F3, 2)
    xs = list(enumerate_field(F9))
    assert len({x.raw for x in xs}) == 9
    assert [format_element(x) for x in xs[:4]] == ['[0,0]', '[1,0]', '[2,0]', '[0,1]']
    with pytest.raises(EnumerationCapError):
        next(enumerate_field(field_tower(3, 1, 40)[1]))


def test_text_format_round_trip(F27):
    F3 = prime_field(3)
    assert element_to_json(F3(2)) == 2
    assert parse_element(F3, '[2]') == parse_element(F3, '2') == F3(2)
    x = parse_element(F27, '[1,2,0]')
    assert x == F27.one() + F27(2) * F27.gen()
    assert format_element(x) == '[1,2,0]'
    with pytest.raises(ValueError):
        parse_element(F27, '[1,2]')


def test_mixing_fields_is_an_error():
    with pytest.raises(FieldMismatch):
        prime_field(3)(1) + prime_field(5)(1)


FIELDS = [(3, 1, 2), (5, 1, 3), (3, 2, 2), (7, 1, 2), (3, 3, 2)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FIELDS), st.randoms(use_true_random=False))
def test_field_axioms(shape, rnd):
    Fq, E = field_tower(*shape)
    x, y, z = (E.random_element(rnd) for _ in range(3))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if x:
        assert x * x.inverse() == E.one()
    # trace and Frobenius are F_q-linear and Tr lands in F_q
    c = Fq.random_element(rnd)
    assert trace(E(c) * x + y) == c * trace(x) + trace(y)
    assert frobenius(x * y) == frobenius(x) * frobenius(y)
    assert x**E.cardinality == x


def test_index_bijection():
    F9 = extension(prime_field(3), 2)
    E = extension(F9, 2)
    seen = set()
    for k in range(E.cardinality):
        x = E.element(k)
        assert x.index == k
        seen.add(x.raw)
    assert len(seen) == 81


def test_random_element_nonzero():
    rng = random.Random(1)
    F = prime_field(3)
    assert all(F.random_element(rng, nonzero=True) for _ in range(50))
