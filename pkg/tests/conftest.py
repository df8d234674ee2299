import pytest

from artin_schreier.gf import prime_field, extension, parse_element

# F_27 = F_3[a]/(a^3 + 2a + 1) and the degree-5 polynomial f of the worked example,
# constant term first.  PRINTED has x-coefficient a^2 + 2a as typeset; PRODUCT
# has 2a^2 + 2, the coefficient of the factored form (see the ledger).
EXAMPLE_PRINTED = [[0, 2, 0], [0, 2, 1], [1, 2, 0], [1, 1, 1], [2, 0, 1], [1, 0, 0]]
EXAMPLE_PRODUCT = [[0, 2, 0], [2, 0, 2], [1, 2, 0], [1, 1, 1], [2, 0, 1], [1, 0, 0]]
EXAMPLE_G = [[1, 0, 0], [2, 1, 1], [0, 1, 2], [2, 1, 1], [1, 0, 0]]


@pytest.fixture(scope='session')
def F3():
    return prime_field(3)


@pytest.fixture(scope='session')
def F27():
    return extension(prime_field(3), 3)


def elems(F, values):
    return [parse_element(F, v) for v in values]


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get('test_acceptance')
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section('acceptance criteria')
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
