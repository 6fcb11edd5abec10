import os

import pytest

DEEP = os.environ.get("COMINUSCULE_DEEP") == "1"


def pytest_collection_modifyitems(config, items):
    if DEEP:
        return
    skip = pytest.mark.skip(reason="deep tier; set COMINUSCULE_DEEP=1")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip)


ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    """Log one PASS/FAIL line per acceptance criterion and fail the test on FAIL."""

    def _record(number: int, ok: bool, detail: str) -> None:
        line = f"C{number:<2} {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE.append(line)
        print(line)
        assert ok, line

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s[1:3])):
            terminalreporter.write_line(line)
