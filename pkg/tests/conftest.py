import time

SUITE_BUDGET_S = 120.0
_results = []
_start = [0.0]


def record(criterion, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {criterion}: {detail}"
    _results.append(line)
    print(line)
    return ok


def pytest_sessionstart(session):
    _start[0] = time.perf_counter()


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    elapsed = time.perf_counter() - _start[0]
    terminalreporter.section("acceptance criteria")
    for line in _results:
        terminalreporter.write_line(line)
    ok = elapsed < SUITE_BUDGET_S
    terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion 13 (suite time): "
                                f"session took {elapsed:.1f} s (budget {SUITE_BUDGET_S:.0f} s)")
