import time
from contextlib import contextmanager

import pytest

from arithgroup.e7.chevalley import E7Algebra
from arithgroup.e7.verify import verify

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def e7():
    return E7Algebra()


@pytest.fixture(scope="session")
def e7_report():
    return verify()


@pytest.fixture
def criterion():
    """Time a block, check its runtime limit and log one PASS/FAIL line."""

    @contextmanager
    def run(number, title, limit):
        start = time.perf_counter()
        status, detail = "FAIL", ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if elapsed >= limit:
                detail = f" (runtime {elapsed:.2f}s exceeds {limit}s)"
                raise AssertionError(detail.strip(" ()"))
            status = "PASS"
        except AssertionError as exc:
            detail = detail or f" ({str(exc).splitlines()[0][:160]})"
            raise
        finally:
            elapsed = time.perf_counter() - start
            line = f"{status} criterion {number}: {title} [{elapsed:.2f}s / limit {limit}s]{detail}"
            ACCEPTANCE_LINES.append(line)
            print(line)

    return run


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
