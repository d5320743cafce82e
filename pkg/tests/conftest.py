import pytest

from hcsaut.design import INF, CycleSystem, plain
from hcsaut.groups import make_cyclic
from hcsaut.rotational import develop

# two starters over Z6 = <g>, written with g^k -> k
A1 = (0, 1, 5, 2, 4, 3)
B1 = (0, 4, 5, 2, 1, 3)


def system(*cycles):
    return CycleSystem.from_cycles(
        [tuple(INF if x == "inf" else plain(x) for x in c) for c in cycles]
    )


@pytest.fixture
def hcs3():
    return system((0, 1, 2))


@pytest.fixture
def hcs5():
    return system((0, 1, 2, 3, 4), (0, 2, 4, 1, 3))


@pytest.fixture
def z6():
    return make_cyclic(6)


@pytest.fixture
def z6_pair(z6):
    """``(H1, H2)`` developed from A1 and B1."""
    return develop(z6, A1), develop(z6, B1)


_CRITERIA: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    num = dict(report.user_properties).get("criterion")
    if num is None:
        return
    if report.when == "call" or report.failed:
        _CRITERIA.setdefault(num, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None:
        outcome.get_result().user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        status = "PASS" if all(_CRITERIA[num]) else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status}")
