import re

_CRITERION = re.compile(r"test_acceptance\.py::test_(c\d+)[a-z_]*")
_results: dict[str, list[tuple[str, str]]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = _CRITERION.search(report.nodeid)
    if m:
        _results.setdefault(m.group(1), []).append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_results, key=lambda c: int(c[1:])):
        entries = _results[crit]
        ok = all(outcome == "passed" for _, outcome in entries)
        if ok:
            detail = ", ".join(name for name, _ in entries)
        else:
            detail = ", ".join(f"{name} [{outcome}]" for name, outcome in entries)
        terminalreporter.write_line(f"{crit.upper():>4} {'PASS' if ok else 'FAIL'}  {detail}")
