import pytest

from frobsig.field import parse_field
from frobsig.poly import PolyRing
from frobsig.presentation import LocalRingPresentation


def make_ring(field="GF(2)", variables=("x", "y"), order=None):
    K = parse_field(field) if isinstance(field, str) else field
    if order is None:
        return PolyRing(K, tuple(variables))
    return PolyRing(K, tuple(variables), order)


def make_pres(field="GF(2)", variables=("x", "y"), mods=(), dim=None):
    P = make_ring(field, variables)
    return LocalRingPresentation.create(P, [P(m) for m in mods], dim)


@pytest.fixture
def cusp():
    return make_pres("GF(2)", ("x", "y"), ["y^2 + x^3"])


@pytest.fixture
def plane2():
    return make_pres("GF(2)", ("x", "y"))


# -- acceptance summary --------------------------------------------------------

_CRITERIA: dict = {}


def _criterion(nodeid):
    name = nodeid.split("::")[-1]
    if "test_acceptance.py" not in nodeid or not name.startswith("test_criterion_"):
        return None
    return int(name.split("_")[2])


def pytest_runtest_logreport(report):
    n = _criterion(report.nodeid)
    if n is None:
        return
    if report.when == "call" or report.outcome != "passed":
        ok = report.outcome == "passed"
        _CRITERIA[n] = _CRITERIA.get(n, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(f"CRITERION {n}: {'PASS' if _CRITERIA[n] else 'FAIL'}")
