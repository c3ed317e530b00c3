import pytest

ACCEPTANCE = {}


@pytest.fixture
def record():
    def _record(number: int, text: str, ok: bool):
        ACCEPTANCE[number] = (text, ok)
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        text, ok = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {n}. {text}")
