import pytest

_RESULTS: dict[int, list[tuple[str, str, float]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _RESULTS.setdefault(mark.args[0], []).append((item.name, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        runs = _RESULTS[num]
        ok = all(outcome == "passed" for _, outcome, _ in runs)
        elapsed = sum(d for _, _, d in runs)
        failed = [name for name, outcome, _ in runs if outcome != "passed"]
        line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        terminalreporter.write_line(line)
