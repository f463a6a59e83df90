import pytest

_RESULTS: list[tuple[str, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        label = mark.args[0]
        callspec = getattr(item, "callspec", None)
        if callspec is not None:
            label += f" [{callspec.id}]"
        detail = "; ".join(v for k, v in item.user_properties if k == "detail")
        if report.failed and call.excinfo is not None:
            detail = str(call.excinfo.value).splitlines()[0]
        _RESULTS.append((label, "PASS" if report.passed else "FAIL", detail))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label, verdict, detail in _RESULTS:
        line = f"{verdict}  {label}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
