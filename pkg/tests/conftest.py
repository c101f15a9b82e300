"""Collects the outcome of every acceptance criterion and prints one line each."""
import pytest

_criteria = {}   # number -> [title, outcomes]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): numbered acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            n, title = mark.args
            _criteria.setdefault(n, [title, {}])[1][item.nodeid] = None


@pytest.hookimpl(trylast=True)
def pytest_runtest_logreport(report):
    for entry in _criteria.values():
        outcomes = entry[1]
        if report.nodeid in outcomes:
            if report.failed:
                outcomes[report.nodeid] = "FAIL"
            elif report.when == "call" and outcomes[report.nodeid] is None:
                outcomes[report.nodeid] = "PASS" if report.passed else "SKIP"


def pytest_terminal_summary(terminalreporter):
    ran = {n: e for n, e in _criteria.items() if any(v for v in e[1].values())}
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ran):
        title, outcomes = ran[n]
        vals = [v for v in outcomes.values() if v]
        verdict = "FAIL" if "FAIL" in vals else ("PASS" if all(v == "PASS" for v in vals) else "SKIP")
        terminalreporter.write_line(f"criterion {n:2d} {verdict}  {title}")
