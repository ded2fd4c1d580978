import pytest

from gia import build_pattern_set, generate, prune, sort_by_efficiency

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    marker = getattr(report, "_acceptance", None)
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _acceptance[marker] = report.outcome


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        report._acceptance = (mark.args[0], mark.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), outcome in sorted(_acceptance.items()):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}")


@pytest.fixture(scope="session")
def k7_raw():
    return generate(7, 45880)


@pytest.fixture(scope="session")
def k7_sorted(k7_raw):
    return sort_by_efficiency(prune(k7_raw))


@pytest.fixture(scope="session")
def k7_optimal(k7_sorted):
    from gia import solve_optimal
    return solve_optimal(k7_sorted)


@pytest.fixture(scope="session")
def k7_greedy(k7_sorted):
    from gia import solve_greedy
    return solve_greedy(k7_sorted)


@pytest.fixture
def small_sets():
    """Sorted sets for a handful of small instances."""
    return {(K, M): build_pattern_set(K, M) for K in (3, 4, 5) for M in (2, 3, 7, 14, 40)}
