import pytest

from weildeco.expr import parse_expression
from weildeco.hm.udata import UData
from weildeco.toric import builtin_fan

U623 = [[0, 1, 0], [1, 0, -1], [0, -1, 0]]

# the generators printed for the three-variable example
V623 = [
    ("1/(x2*x3)+1/x1", "1/x3+1/(x1*x2)"),
    ("1/x2+x3/x1", "x3/(x1*x2)"),
    ("x2/x1", "1/x1"),
]


@pytest.fixture(scope="session")
def a3():
    return builtin_fan("A3")


@pytest.fixture(scope="session")
def u623(a3):
    return UData.from_matrix(a3, U623)


@pytest.fixture(scope="session")
def v623(a3):
    ring = a3.torus_ring()
    return [(parse_expression(f, ring), parse_expression(g, ring)) for f, g in V623]


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
