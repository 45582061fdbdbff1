from collections import OrderedDict

import pytest

CRITERIA = [f"AC{i}" for i in range(1, 11)]
_outcomes = OrderedDict((c, []) for c in CRITERIA)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        report.criterion = marker.args[0]


def pytest_runtest_logreport(report):
    cid = getattr(report, "criterion", None)
    if cid is None:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(cid, []).append((report.nodeid, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not any(_outcomes.values()):
        return
    terminalreporter.section("acceptance criteria")
    for cid, results in _outcomes.items():
        if not results:
            terminalreporter.write_line(f"{cid}: NOT RUN")
            continue
        failed = [n for n, ok in results if not ok]
        status = "FAIL" if failed else "PASS"
        line = f"{cid}: {status} ({len(results) - len(failed)}/{len(results)} tests)"
        if failed:
            line += " failing: " + ", ".join(n.split("::")[-1] for n in failed)
        terminalreporter.write_line(line)
