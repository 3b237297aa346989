"""Collects acceptance outcomes and prints one line per criterion."""

_ACCEPTANCE: dict = {}


def pytest_runtest_logreport(report):
    if "test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    num = int(name.split("_")[2])
    if report.when == "call" or report.outcome == "failed":
        ok = report.outcome == "passed"
        _ACCEPTANCE[num] = _ACCEPTANCE.get(num, True) and ok


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if _ACCEPTANCE[num] else 'FAIL'}")
