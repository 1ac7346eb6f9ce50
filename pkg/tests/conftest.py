import pytest

from hermicode.gf import build_tower

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one of the acceptance criteria")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when not in ("setup", "call"):
        return
    number, title = marker.args
    passed = rep.passed
    prev = _ACCEPTANCE.get(number)
    if prev is not None:
        passed = passed and prev[1]
    if rep.when == "call" or not rep.passed:
        _ACCEPTANCE[number] = (title, passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, passed = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def f9():
    return build_tower(p=3, a=1, b=1, N=1)


@pytest.fixture(scope="session")
def f9n2():
    return build_tower(p=3, a=1, b=1, N=2)


@pytest.fixture(scope="session")
def f81():
    """s = 3, t = 9."""
    return build_tower(p=3, a=1, b=2, N=1)
