import pytest

# criterion number -> (description, passed)
ACCEPTANCE: dict[int, tuple[str, bool]] = {}


@pytest.fixture
def record_criterion():
    def record(number: int, description: str, passed: bool) -> None:
        ACCEPTANCE[number] = (description, passed)
        print(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {description}")
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        description, passed = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {number:>2}. {description}")
