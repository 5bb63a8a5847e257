import re
from collections import OrderedDict

_CRITERION = re.compile(r"test_acceptance\.py::test_c(\d+)")
_results: "OrderedDict[int, list]" = OrderedDict()


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match or (report.when != "call" and not (report.when == "setup" and report.failed)):
        return
    detail = dict(report.user_properties).get("detail", "")
    name = report.nodeid.split("::", 1)[1]
    _results.setdefault(int(match.group(1)), []).append((name, report.passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        entries = _results[number]
        ok = all(passed for _, passed, _ in entries)
        notes = "; ".join(f"{'' if passed else 'FAILED '}{name}: {detail}" for name, passed, detail in entries)
        terminalreporter.write_line(f"ACCEPTANCE C{number} {'PASS' if ok else 'FAIL'}: {notes}")
