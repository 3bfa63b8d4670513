import time

import pytest

CRITERIA = {
    1: "lattice suite",
    2: "K5 explicit invariants",
    3: "Luna example",
    4: "oracle-tier family sweep",
    5: "character tier and filter reductions",
    6: "cross-validation properties",
    7: "criteria-tier honesty",
}

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): test belongs to acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n = mark.args[0]
    slot = _results.setdefault(n, {"passed": 0, "failed": [], "seconds": 0.0})
    if rep.when == "call":
        slot["seconds"] += rep.duration
        if rep.passed:
            slot["passed"] += 1
        else:
            slot["failed"].append(item.name)
    elif rep.failed:
        slot["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        r = _results[n]
        status = "FAIL" if r["failed"] else "PASS"
        line = "criterion %d (%s): %s  [%d passed, %d failed, %.2fs]" % (
            n, CRITERIA.get(n, "?"), status, r["passed"], len(r["failed"]), r["seconds"])
        if r["failed"]:
            line += "  failing: " + ", ".join(r["failed"])
        terminalreporter.write_line(line)


@pytest.fixture
def stopwatch():
    """stopwatch() -> seconds since the fixture was created."""
    t0 = time.perf_counter()
    return lambda: time.perf_counter() - t0
