import time
from contextlib import contextmanager

import pytest

ACCEPTANCE_LINES: list[str] = []


@contextmanager
def criterion(number: int, title: str, limit_s: float):
    """Time a criterion and record one PASS/FAIL line for the terminal summary."""
    start = time.perf_counter()
    ok, detail = False, ""
    try:
        yield
        ok = True
    except Exception as exc:
        detail = f" ({type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''})"
        raise
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < limit_s
        status = "PASS" if ok and within else "FAIL"
        if ok and not within:
            detail = " (over time limit)"
        line = f"criterion {number}: {status}  {title}  [{elapsed:.2f}s / limit {limit_s:.0f}s]{detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
    assert within, f"criterion {number} took {elapsed:.1f}s, limit {limit_s}s"


@pytest.fixture
def acceptance():
    return criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
