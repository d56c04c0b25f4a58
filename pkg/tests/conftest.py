import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=30, deadline=None, database=None)
settings.load_profile("default")

_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of one numbered acceptance criterion, then assert it."""

    def record(number: int, passed: bool, summary: str) -> None:
        _CRITERIA[number] = (bool(passed), summary)
        print(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}")
        assert passed, summary

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria (exact)")
    for number in sorted(_CRITERIA):
        passed, summary = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {summary}")
