import pytest

from fanoinv.algebra import GradedRing, grassmannian_2_5, projective_space, tensor
from fanoinv.dtcalc import target_geometry


@pytest.fixture(scope="session")
def v5() -> GradedRing:
    return target_geometry("V5").ring


@pytest.fixture(scope="session")
def v22() -> GradedRing:
    return target_geometry("V22").ring


@pytest.fixture(scope="session")
def gr25() -> GradedRing:
    return grassmannian_2_5()


@pytest.fixture(scope="session")
def p2() -> GradedRing:
    return projective_space(2)


@pytest.fixture(scope="session")
def gr_v5(gr25, v5):
    return tensor(gr25, v5)


def pytest_addoption(parser):
    parser.addoption("--run-slow", action="store_true", help="run the V5 degree-4 computation")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-slow"):
        return
    skip = pytest.mark.skip(reason="needs --run-slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


_ACCEPTANCE: list[str] = []


@pytest.fixture
def report():
    """Record one acceptance line; lines are printed again in the terminal summary."""

    def _report(line: str) -> None:
        print(line)
        _ACCEPTANCE.append(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
