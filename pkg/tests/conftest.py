import pytest

from vankampen import presgen as P
from vankampen import solver as S


@pytest.fixture(scope="session")
def family4():
    return P.generate_family(4, word_solver=S.family_word_solver)


@pytest.fixture(scope="session")
def family8():
    return P.generate_family(8)


@pytest.fixture(scope="session")
def pres_r2(family4):
    # relators kept below index 3: r1 is dropped by the index-set decision
    return P.Presentation.from_family(family4, family4.kept(below=3))


# -- acceptance report -----------------------------------------------------------------------

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """record(ok, detail) logs one PASS/FAIL line for the test's criterion marker."""
    number = request.node.get_closest_marker("criterion").args[0]

    def record(ok: bool, detail: str):
        _CRITERIA[number] = (ok, detail)
        assert ok, detail

    yield record
    _CRITERIA.setdefault(number, (False, "raised before reporting"))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, (ok, detail) in sorted(_CRITERIA.items()):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
