import re

_CRITERION = re.compile(r"test_criterion_(\d+)_(\w+)")
_results: dict[int, tuple[str, bool]] = {}


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or (report.when != "call" and report.passed):
        return
    num = int(m.group(1))
    name, ok = _results.get(num, (m.group(2).replace("_", " "), True))
    _results[num] = (name, ok and report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_results):
        name, ok = _results[num]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {num:2d}: {name}")
    passed = sum(ok for _, ok in _results.values())
    terminalreporter.write_line(f"{passed}/{len(_results)} criteria passed")
