"""Shared pytest wiring for the acceptance summary.

Tests marked ``@pytest.mark.criterion(num, "label")`` feed a table printed
after the run: exactly one PASS/FAIL line per criterion number.  Notes
registered through the ``acceptance_notes`` fixture (derived constants and
their reference counterparts) are printed below the table so numeric
comparisons are visible even when every test passes.
"""

from __future__ import annotations

import pytest

_RESULTS: dict[int, tuple[str, bool]] = {}
_NOTES: list[str] = []


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(num, label): contributes to the acceptance summary "
        "line for that criterion",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and report.when == "call":
        num, label = marker.args
        ok = report.passed
        if num in _RESULTS:
            label, prev_ok = _RESULTS[num]
            ok = ok and prev_ok
        _RESULTS[num] = (label, ok)


@pytest.fixture
def acceptance_notes():
    """Append a line to the acceptance summary (for reported constants)."""

    def add(line: str) -> None:
        if line not in _NOTES:
            _NOTES.append(line)

    return add


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        label, ok = _RESULTS[num]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} [{status}] {label}")
    for line in _NOTES:
        terminalreporter.write_line(f"  note: {line}")
