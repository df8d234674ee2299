import json

import pytest
from hypothesis import given, settings, strategies as st

from artin_schreier.gf import prime_field, extension, field_tower, enumerate_field, EnumerationCapError
from artin_schreier.polyring import LinearizedPoly
from artin_schreier.curves import (CurveSpec, MethodNotApplicable, brute_force_points, brute_force_histogram,
                                   pipeline_points, formula_points_general, formula_points_xqi,
                                   formula_points_i1, rank_section5_N, verify, sweep_grid, sweep)

from conftest import EXAMPLE_PRODUCT, elems


def xqi(p, r, i, lam, e=1):
    Fp = prime_field(p)
    F = Fp if e == 1 else extension(Fp, e)
    return CurveSpec.xqi(F, r, i, lam)


def naive_points(spec):
    """Count (x, y) on the curve straight from the definition."""
    E = spec.extension()
    q = spec.q
    lam = E(spec.lam)
    lhs = {}
    for y in enumerate_field(E):
        key = (y**q - y).raw
        lhs[key] = lhs.get(key, 0) + 1
    return sum(lhs.get((x * spec.P(x) - lam).raw, 0) for x in enumerate_field(E))


def test_brute_force_examples():
    assert brute_force_points(xqi(3, 2, 1, 0)).points == 9
    assert brute_force_points(xqi(3, 3, 1, 0)).points == 27
    # (x^5 - x) x = 1 + y^5 - y has solutions: Tr(x^6 - x^2) = 2 is hit 10 times in F_25
    assert brute_force_points(xqi(5, 2, 1, 1)).points == 50
    assert naive_points(xqi(5, 2, 1, 1)) == 50


def test_brute_force_cap():
    with pytest.raises(EnumerationCapError):
        brute_force_points(xqi(3, 40, 1, 0))


@pytest.mark.parametrize('args', [(3, 2, 1, 0), (3, 2, 1, 1), (3, 3, 2, 2), (5, 2, 1, 3), (3, 4, 2, 1)])
def test_brute_force_matches_definition(args):
    spec = xqi(*args)
    res = brute_force_points(spec)
    assert res.points == naive_points(spec)
    if spec.q**(2 * spec.r) <= 10**6:
        assert res.intermediates['pair_count'] == res.points


def test_workers_do_not_change_counts():
    spec = xqi(3, 11, 4, 1)
    assert brute_force_histogram(spec, workers=1) == brute_force_histogram(spec, workers=2)


def test_pipeline_examples():
    res = pipeline_points(xqi(3, 5, 2, 1))
    assert res.points == 270
    assert pipeline_points(xqi(3, 2, 1, 0)).points == 9
    assert set(res.intermediates) == {'v', 'disc_class', 'twist', 'parity'}


def test_formula_general_records_published_value():
    res = formula_points_general(xqi(3, 5, 2, 1))
    assert res.points == 270
    assert res.intermediates['as_printed'] == 234
    # p | r: the published hypotheses fail and the pipeline value is used
    res = formula_points_general(xqi(3, 6, 1, 1))
    assert res.intermediates['hypothesis_failure'] == 'gcd(r,p)=1'
    assert res.points == brute_force_points(xqi(3, 6, 1, 1)).points


def test_formula_xqi_examples():
    res = formula_points_xqi(xqi(3, 5, 2, 1))
    assert res.points == 270
    assert (res.intermediates['D'], res.intermediates['L']) == (-1, 1)
    assert formula_points_xqi(xqi(3, 2, 1, 0)).points == 9
    assert formula_points_xqi(xqi(5, 2, 1, 1)).points == 50
    with pytest.raises(MethodNotApplicable):
        formula_points_xqi(xqi(3, 6, 1, 0))
    with pytest.raises(MethodNotApplicable):
        formula_points_xqi(CurveSpec(prime_field(3), 4, LinearizedPoly(prime_field(3), [1, 1]), prime_field(3)(0)))


def test_formula_i1_examples():
    for lam in range(3):
        assert formula_points_i1(xqi(3, 3, 1, lam)).points == 27
    assert formula_points_i1(xqi(5, 2, 1, 1)).points == 50
    assert formula_points_i1(xqi(3, 4, 1, 1)).points == 108 == brute_force_points(xqi(3, 4, 1, 1)).points
    with pytest.raises(MethodNotApplicable):
        formula_points_i1(xqi(3, 4, 2, 1))


def test_rank_section5_examples():
    assert rank_section5_N(7, 3) == 6
    assert rank_section5_N(6, 3) == 4
    assert rank_section5_N(3, 3) == 1


def test_verify_small_curve():
    rep = verify(xqi(3, 5, 2, 1))
    assert rep.agreement
    assert {m.name for m in rep.methods} == {'brute', 'pipeline', 'formula_general', 'formula_xqi'}
    assert {m.points for m in rep.methods} == {270}
    assert any(d['method'] == 'formula_general' and d['expected_from_paper'] == 234 and d['oracle_value'] == 270
               for d in rep.deviations)


def test_verify_example_curve_skips_brute(F27):
    spec = CurveSpec(F27, 7, LinearizedPoly(F27, elems(F27, EXAMPLE_PRODUCT)), F27.gen())
    rep = verify(spec)
    assert 'brute' in rep.skipped
    assert rep.agreement
    assert rep.method('pipeline').points == rep.method('formula_general').points


def test_verify_logs_case_i_family():
    rep = verify(xqi(3, 4, 2, 1))
    dev = [d for d in rep.deviations if d['method'] == 'formula_xqi']
    assert dev and dev[0]['expected_from_paper'] == 84 and dev[0]['oracle_value'] == 108


def test_report_json_schema():
    obj = verify(xqi(3, 3, 1, 1)).to_json()
    assert set(obj) == {'spec', 'methods', 'agreement', 'deviations', 'skipped'}
    assert set(obj['spec']) == {'p', 'e', 'base_modulus', 'r', 'ext_modulus', 'P', 'lambda', 'i'}
    for m in obj['methods']:
        assert isinstance(m['points'], str) and isinstance(m['N'], str)
        assert int(m['points']) == 3 * int(m['N'])
    for d in obj['deviations']:
        assert isinstance(d['oracle_value'], str)
    json.dumps(obj)


def test_histogram_sums():
    for spec in [xqi(3, 4, 1, 0), xqi(3, 6, 2, 0), xqi(5, 3, 1, 0, e=1), xqi(3, 3, 1, 0, e=2)]:
        assert sum(brute_force_histogram(spec)) == spec.q**spec.r


def test_sweep_grid_shape():
    specs = list(sweep_grid(ps=(3,), es=(1,), rmax=4))
    assert len(specs) == 3 * (1 + 2 + 3)
    rep = sweep(specs)
    assert rep.mismatches == 0
    assert len(rep.reports) == len(specs)


FIELDS = [(3, 1), (5, 1), (7, 1), (3, 2)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(FIELDS), st.integers(2, 5), st.data())
def test_methods_agree_on_random_curves(shape, r, data):
    p, e = shape
    F = field_tower(p, e, 2)[0]
    q = F.cardinality
    if q**r > 10**5:
        r = 2
    l = data.draw(st.integers(0, r - 1))
    coeffs = [F.element(data.draw(st.integers(0, q - 1))) for _ in range(l + 1)]
    if not any(c.raw != F.zero_raw() for c in coeffs):
        coeffs[0] = F.one()
    P = LinearizedPoly(F, coeffs)
    lam = F.element(data.draw(st.integers(0, q - 1)))
    spec = CurveSpec(F, r, P, lam)
    if P.q_degree >= r:
        return
    rep = verify(spec, ('brute', 'pipeline', 'formula_general'))
    assert rep.agreement, rep.to_json()
    assert rep.points % q == 0
