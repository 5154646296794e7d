import pytest

# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE_LINES: dict[int, list[str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        for line in ACCEPTANCE_LINES[key]:
            terminalreporter.write_line(line)


@pytest.fixture
def report_criterion():
    def record(number: int, passed: bool, summary: str, details=()):
        lines = [f"{'PASS' if passed else 'FAIL'} criterion {number}: {summary}"]
        lines += [f"     {d}" for d in details]
        ACCEPTANCE_LINES[number] = lines
        print("\n".join(lines))
        return passed

    return record
