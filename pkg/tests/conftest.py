import os
import sys
import time

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion(request):
    """Run a criterion body under a time limit and record one PASS/FAIL line."""
    lines = request.config.stash[_LINES]

    def run(number, title, limit, body):
        start = time.perf_counter()
        error = None
        detail = ""
        try:
            detail = body() or ""
        except Exception as exc:
            error = exc
        elapsed = time.perf_counter() - start
        ok = error is None and elapsed < limit
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}  [{elapsed:.2f}s, limit {limit}s]"
        if detail:
            line += f"  {detail}"
        if error is not None:
            line += f"  ({error})".splitlines()[0]
        print(line)
        lines.append(line)
        if error is not None:
            raise error
        assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"

    return run


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
