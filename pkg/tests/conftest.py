import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE] = {}


@pytest.fixture
def criterion(request):
    """``with criterion(n, title) as info:`` records pass/fail and wall time of
    one acceptance criterion; ``info["detail"]`` may hold a short note."""
    results = request.config.stash[_ACCEPTANCE]

    @contextmanager
    def run(number: int, title: str):
        info = {"detail": ""}
        start = time.perf_counter()
        passed = False
        try:
            yield info
            passed = True
        finally:
            elapsed = time.perf_counter() - start
            detail = f"{elapsed:.2f}s" + (f", {info['detail']}" if info["detail"] else "")
            results[number] = (title, passed, detail)
            print(f"criterion {number}: {'PASS' if passed else 'FAIL'} {title} ({detail})")

    return run


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, passed, detail = results[number]
        line = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
