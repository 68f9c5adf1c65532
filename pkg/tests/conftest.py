import pytest

_acceptance_lines = []


@pytest.fixture(scope="session")
def acceptance_report():
    """Shared sink for the one-line PASS/FAIL verdicts."""
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # replay the verdicts after capture is torn down so they always show
    if _acceptance_lines:
        terminalreporter.section("acceptance report")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
