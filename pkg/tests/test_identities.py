import pytest

from artin_schreier import identities
from artin_schreier.identities import BATCHES, run_all, multiplicative_order


@pytest.mark.parametrize('name', sorted(BATCHES))
def test_batch_passes(name):
    res = BATCHES[name](n=150, seed=3)
    assert res.instances == 150
    assert res.passed, res.failures[:1]


def test_batches_are_seeded():
    a = [r.to_json() for r in run_all(n=20, seed=11)]
    b = [r.to_json() for r in run_all(n=20, seed=11)]
    assert a == b


def test_batches_catch_a_broken_evaluator(monkeypatch):
    real = identities.hk_eval

    def broken(k, points, method='recurrence'):
        value = real(k, points, method)
        return value + 1 if method == 'recurrence' and k >= 2 else value

    monkeypatch.setattr(identities, 'hk_eval', broken)
    for name in ('chsp', 'relation', 'innerproduct'):
        assert not BATCHES[name](n=60, seed=0).passed


def test_multiplicative_order():
    assert multiplicative_order(3, 7) == 6
    assert multiplicative_order(9, 4) == 1
    assert multiplicative_order(5, 1) == 1
