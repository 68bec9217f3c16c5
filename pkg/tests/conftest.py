"""Collects acceptance outcomes and prints one verdict line per criterion."""

import pytest

_results: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, label): acceptance criterion of a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = tuple(marker.args)


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    number, label = crit
    entry = _results.setdefault(number, {"label": label, "failed": []})
    if report.failed:
        entry["failed"].append(report.nodeid.split("::")[-1])


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        verdict = "FAIL" if entry["failed"] else "PASS"
        line = f"criterion {number:>2}: {verdict}  {entry['label']}"
        if entry["failed"]:
            line += f"  [failing: {', '.join(entry['failed'])}]"
        terminalreporter.write_line(line)
