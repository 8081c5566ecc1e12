import pytest

from polytwo import catalog

# acceptance verdicts collected by test_acceptance, echoed after the run
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def cube():
    return catalog.get("cube")


@pytest.fixture(scope="session")
def cubo():
    return catalog.get("cuboctahedron")


@pytest.fixture(scope="session")
def torus21():
    return catalog.get("torus_2_1")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
