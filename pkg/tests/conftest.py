import re

_CRITERIA: dict[str, str] = {}


def pytest_runtest_logreport(report):
    match = re.search(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)", report.nodeid)
    if not match:
        return
    key = f"criterion {match.group(1)}: {match.group(2).replace('_', ' ')}"
    if report.when == "call" or report.failed:
        if report.failed:
            _CRITERIA[key] = "FAIL"
        else:
            _CRITERIA.setdefault(key, "PASS" if report.passed else report.outcome.upper())


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA, key=lambda k: int(k.split()[1].rstrip(":"))):
        terminalreporter.write_line(f"{_CRITERIA[key]}  {key}")
