import pytest
from hypothesis import given, settings, strategies as st

from artin_schreier.gf import prime_field, extension, field_tower
from artin_schreier.polyring import (Poly, LinearizedPoly, poly_gcd, reciprocal, is_self_reciprocal,
                                     x_pow_minus_one, associated_polynomial, hk_eval,
                                     vandermonde_products, RepeatedPointError, format_poly, parse_poly)

from conftest import EXAMPLE_PRINTED, EXAMPLE_PRODUCT, EXAMPLE_G, elems


def test_gcd_examples(F27):
    f = Poly(F27, elems(F27, EXAMPLE_PRODUCT))
    g = poly_gcd(f, x_pow_minus_one(F27, 7))
    assert format_poly(g) == format_poly(Poly(F27, elems(F27, EXAMPLE_G)))
    F5 = prime_field(5)
    assert poly_gcd(Poly(F5, [-1, 0, 1]), Poly(F5, [-1, 1])) == Poly(F5, [-1, 1])
    h = Poly(F5, [1, 2, 3])
    assert poly_gcd(h, Poly(F5, [])) == h.monic()


def test_printed_f_is_coprime_to_x7_minus_1(F27):
    # the typeset expansion differs from the factored form in one coefficient
    f = Poly(F27, elems(F27, EXAMPLE_PRINTED))
    assert poly_gcd(f, x_pow_minus_one(F27, 7)).degree == 0


def test_reciprocal_examples(F27):
    g = Poly(F27, elems(F27, EXAMPLE_G))
    assert reciprocal(g) == g and is_self_reciprocal(g)
    F3 = prime_field(3)
    assert reciprocal(Poly(F3, [1, 2])) == Poly(F3, [2, 1])
    with pytest.raises(ValueError):
        reciprocal(Poly(F3, [0, 1]))


def test_associated_polynomial(F27):
    P = LinearizedPoly(F27, elems(F27, EXAMPLE_PRINTED))
    assert associated_polynomial(P) == Poly(F27, elems(F27, EXAMPLE_PRINTED))
    F5 = prime_field(5)
    assert associated_polynomial(LinearizedPoly.x_qi_minus_x(F5, 3)) == Poly(F5, [-1, 0, 0, 1])
    assert associated_polynomial(LinearizedPoly(F5, [3])) == Poly(F5, [3])


def test_linearized_shortcut():
    F = prime_field(3)
    assert LinearizedPoly.x_qi_minus_x(F, 2).shortcut_index() == 2
    assert LinearizedPoly(F, [2, 1, 1]).shortcut_index() is None
    assert LinearizedPoly(F, [1]).shortcut_index() is None


def test_linearized_evaluation_matches_definition():
    Fq, E = field_tower(3, 2, 3)
    P = LinearizedPoly(Fq, [Fq.element(4), Fq.element(7), Fq.element(2)])
    q = Fq.cardinality
    for k in (0, 1, 17, 400, 728):
        x = E.element(k)
        expected = sum((E(c) * x**(q**j) for j, c in enumerate(P.coeffs)), E.zero())
        assert P(x) == expected


def test_hk_examples():
    F = prime_field(7)
    x1, x2 = F(3), F(5)
    assert hk_eval(1, [x1, x2]) == x1 + x2
    assert hk_eval(2, [x1]) == x1 * x1
    assert hk_eval(0, [x1, x2]) == F.one()
    with pytest.raises(RepeatedPointError):
        hk_eval(2, [x1, x1], method='rational')


def test_vandermonde_examples():
    F = prime_field(7)
    x1, x2, x3 = F(1), F(3), F(6)
    assert vandermonde_products([x1, x2]) == x2 - x1
    assert vandermonde_products([x1, x1]) == F.zero()
    assert vandermonde_products([x1, x2, x3], 2) == -(x3 - x1)
    assert vandermonde_products([x1, x2, x3], 1) == x3 - x2


def test_text_round_trip(F27):
    f = Poly(F27, elems(F27, EXAMPLE_G))
    assert parse_poly(F27, format_poly(f)) == f
    assert format_poly(Poly(prime_field(3), [1, 2, 0, 1])) == '[1,2,0,1]'


polys = st.lists(st.integers(0, 4), max_size=7)


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_division_and_gcd(a, b):
    F = prime_field(5)
    f, g = Poly(F, a), Poly(F, b)
    if g:
        quo, rem = divmod(f, g)
        assert quo * g + rem == f
        assert not rem or rem.degree < g.degree
    d = poly_gcd(f, g)
    if d:
        assert d.is_monic()
        assert not f % d and not g % d


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=1, max_size=5), st.integers(0, 5))
def test_hk_evaluators_agree(idx, k):
    F = extension(prime_field(3), 2)
    pts = [F.element(i) for i in dict.fromkeys(idx)]
    assert hk_eval(k, pts) == hk_eval(k, pts, method='rational')
