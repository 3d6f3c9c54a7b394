import time
from contextlib import contextmanager
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"

# (number, title, status, seconds, budget, note) for every acceptance criterion run
ACCEPTANCE = []


@pytest.fixture(scope="session")
def fixtures() -> Path:
    return FIXTURES


@pytest.fixture(scope="session")
def excerpt() -> str:
    return (FIXTURES / "example_excerpt.txt").read_text(encoding="utf-8").strip()


@pytest.fixture
def criterion():
    """Context manager that times one criterion, checks its budget and records the outcome."""

    @contextmanager
    def run(number, title, budget):
        start = time.perf_counter()
        note = {"text": ""}
        try:
            yield note
        except pytest.skip.Exception as e:
            ACCEPTANCE.append((number, title, "SKIP", time.perf_counter() - start, budget, str(e)))
            raise
        except BaseException:
            ACCEPTANCE.append((number, title, "FAIL", time.perf_counter() - start, budget, note["text"]))
            raise
        elapsed = time.perf_counter() - start
        status = "PASS" if elapsed < budget else "FAIL"
        ACCEPTANCE.append((number, title, status, elapsed, budget, note["text"]))
        assert elapsed < budget, f"criterion {number} took {elapsed:.2f}s, budget {budget}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    order = lambda r: (int(str(r[0]).rstrip("ab")), str(r[0]))
    for number, title, status, elapsed, budget, note in sorted(ACCEPTANCE, key=order):
        line = f"criterion {number:<3} {status}  {title} ({elapsed:.2f}s, budget {budget}s)"
        if note:
            line += f": {note}"
        terminalreporter.write_line(line)
