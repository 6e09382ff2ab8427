import pytest

# (criterion number, passed, message), filled in by test_acceptance.py
ACCEPTANCE = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, msg in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n:>2}: {msg}")


@pytest.fixture
def criterion():
    def record(n, ok, msg):
        ACCEPTANCE.append((n, bool(ok), msg))
        assert ok, f"criterion {n}: {msg}"

    return record
