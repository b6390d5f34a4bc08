"""Collects acceptance outcomes and prints one line per criterion at the end of the run."""

_OUTCOMES: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    outcome = "PASS" if call.excinfo is None else "FAIL"
    prev = _OUTCOMES.get(number)
    if prev is None or prev[0] == "PASS":
        _OUTCOMES[number] = (outcome, title)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_OUTCOMES, key=int):
        outcome, title = _OUTCOMES[number]
        terminalreporter.write_line(f"criterion {number}: {outcome}  {title}")
