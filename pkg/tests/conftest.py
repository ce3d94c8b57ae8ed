import pytest

_ACCEPTANCE: list[tuple[int, bool, str]] = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the caller still asserts."""

    def record(number: int, passed: bool, detail: str) -> bool:
        _ACCEPTANCE.append((number, passed, detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, passed, detail in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {detail}")
