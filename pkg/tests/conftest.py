_CRITERION_LINES = []


def record_criterion(line: str):
    _CRITERION_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if _CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERION_LINES:
            terminalreporter.write_line(line)
