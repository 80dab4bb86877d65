from __future__ import annotations

import pytest

from cegi.fixtures import load_paper_fixtures

_criteria: dict[int, dict] = {}


@pytest.fixture(scope="session")
def fx():
    return load_paper_fixtures()


def pytest_collection_modifyitems(items):
    for item in items:
        marker = item.get_closest_marker("criterion")
        if marker is not None:
            number, title = marker.args
            _criteria.setdefault(number, {"title": title, "passed": 0, "failed": [], "skipped": 0})


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = next((m for m in getattr(report, "_criterion", ()) if m), None)
    if marker is None:
        return
    entry = _criteria[marker[0]]
    if report.passed:
        entry["passed"] += 1
    elif report.skipped:
        entry["skipped"] += 1
    else:
        entry["failed"].append(report.nodeid.split("::", 1)[-1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    report._criterion = (marker.args,) if marker is not None else ()


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_criteria):
        entry = _criteria[number]
        ran = entry["passed"] + len(entry["failed"])
        if not ran:
            status = "NOT RUN"
        else:
            status = "FAIL" if entry["failed"] else "PASS"
        tr.write_line(f"criterion {number}: {status}  {entry['title']} ({entry['passed']}/{ran} checks passed)")
        for nodeid in entry["failed"]:
            tr.write_line(f"    failed: {nodeid}")
