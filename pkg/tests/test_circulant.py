import pytest
from hypothesis import given, settings, strategies as st

from artin_schreier.gf import prime_field, extension
from artin_schreier.polyring import Poly, poly_gcd, x_pow_minus_one
from artin_schreier.circulant import (DenseMatrix, CirculantMatrix, HypothesisError, rank_gaussian,
                                      rank_via_gcd, reduced_block, det, kernel_basis, rank_report)

from conftest import EXAMPLE_PRINTED, EXAMPLE_PRODUCT, EXAMPLE_G, elems


def example_circulant(F27, coeffs):
    return CirculantMatrix(F27, elems(F27, coeffs) + [F27.zero()])


def test_rank_gaussian_examples(F27):
    F3 = prime_field(3)
    assert rank_gaussian(DenseMatrix.identity(F3, 5)) == 5
    assert rank_gaussian(DenseMatrix.zeros(F3, 4, 4)) == 0
    assert rank_gaussian(example_circulant(F27, EXAMPLE_PRODUCT).dense()) == 3
    # the typeset generator gives an invertible circulant
    assert rank_gaussian(example_circulant(F27, EXAMPLE_PRINTED).dense()) == 7


def test_rank_via_gcd_examples(F27):
    rank, m, g = rank_via_gcd(example_circulant(F27, EXAMPLE_PRODUCT))
    assert (rank, m) == (3, 4)
    assert g == Poly(F27, elems(F27, EXAMPLE_G))
    F3 = prime_field(3)
    for r in (2, 4, 5, 7):
        assert rank_via_gcd(CirculantMatrix(F3, [1] + [0] * (r - 1)))[0] == r
        rank, m, g = rank_via_gcd(CirculantMatrix(F3, [1] * r))
        assert rank == 1 and g == Poly(F3, [1] * r)


def test_rank_via_gcd_hypotheses():
    F3 = prime_field(3)
    with pytest.raises(HypothesisError) as exc:
        rank_via_gcd(CirculantMatrix(F3, [1, 1, 0]))
    assert exc.value.condition == 'gcd(r,p)=1'
    # x - 2 divides x^3 - 1 over F_7 and its reciprocal is x - 4
    F7 = prime_field(7)
    with pytest.raises(HypothesisError) as exc:
        rank_via_gcd(CirculantMatrix(F7, [-2, 1, 0]))
    assert exc.value.condition == 'self-reciprocal'


def test_reduced_block_examples(F27):
    C = example_circulant(F27, EXAMPLE_PRINTED)
    a = elems(F27, EXAMPLE_PRINTED)
    z = F27.zero()
    block = reduced_block(C, 3)
    assert block.tolist() == [[a[0], a[1], a[2]], [z, a[0], a[1]], [F27.one(), z, a[0]]]
    assert reduced_block(C, 7) == C.dense()
    assert reduced_block(C, 1).tolist() == [[a[0]]]


def test_det_examples(F27):
    a = F27.gen()
    assert det(reduced_block(example_circulant(F27, EXAMPLE_PRINTED), 3)) == a * a
    assert det(reduced_block(example_circulant(F27, EXAMPLE_PRODUCT), 3)) == F27([2, 2, 2])
    F5 = prime_field(5)
    assert det(DenseMatrix.identity(F5, 4)) == F5.one()
    assert det(DenseMatrix.from_rows(F5, [[1, 2, 3], [4, 0, 1], [1, 2, 3]])) == F5.zero()
    assert det(DenseMatrix.from_rows(F5, [[1, 2], [3, 4]])) == F5(-2)


def test_rank_report_fields(F27):
    rep = rank_report(example_circulant(F27, EXAMPLE_PRODUCT))
    assert rep['rank'] == rep['rank_gcd'] == 3
    assert rep['m'] == 4 and rep['self_reciprocal']
    assert rep['g'] == EXAMPLE_G
    assert rep['det_reduced'] == [2, 2, 2]
    rep = rank_report(CirculantMatrix(prime_field(3), [1, 1, 0]))
    assert rep['rank_gcd'] is None and rep['hypothesis_failure'] == 'gcd(r,p)=1'
    assert rep['rank'] == 3


def test_matrix_basics():
    F = prime_field(7)
    A = DenseMatrix.from_rows(F, [[1, 2, 3], [4, 5, 6]])
    assert A.transpose().transpose() == A
    assert (A @ DenseMatrix.identity(F, 3)) == A
    assert (A + A) == A.scale(2)
    assert not A.is_square
    with pytest.raises(ValueError):
        det(A)


FIELDS = [prime_field(3), prime_field(5), prime_field(7), extension(prime_field(3), 2)]


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(2, 9), st.data())
def test_rank_is_r_minus_gcd_degree(F, r, data):
    # holds for every circulant once p does not divide r (x^r - 1 is squarefree)
    if r % F.p == 0:
        r += 1
    gen = [F.element(data.draw(st.integers(0, F.cardinality - 1))) for _ in range(r)]
    C = CirculantMatrix(F, gen)
    g = poly_gcd(C.associated_polynomial(), x_pow_minus_one(F, r))
    rank = rank_gaussian(C)
    assert rank == r - g.degree
    try:
        assert rank_via_gcd(C)[0] == rank
    except HypothesisError:
        pass
    M = C.dense()
    basis = kernel_basis(M)
    assert len(basis) == r - rank
    for z in basis:
        col = DenseMatrix(F, r, 1, z)
        assert M @ col == DenseMatrix.zeros(F, r, 1)
