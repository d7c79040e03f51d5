import time
from contextlib import contextmanager

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("default")

_ACCEPTANCE: dict[int, str] = {}


class _Record:
    def __init__(self):
        self.ok = False
        self.detail = ""


@pytest.fixture
def criterion():
    """``with criterion(n, limit_s) as rec: ... rec.ok = ...`` logs one PASS/FAIL line."""

    @contextmanager
    def run(number: int, limit: float):
        rec = _Record()
        start = time.perf_counter()
        try:
            yield rec
        except Exception as exc:
            rec.ok = False
            rec.detail = f"{type(exc).__name__}: {exc}"
            raise
        finally:
            elapsed = time.perf_counter() - start
            within = elapsed < limit
            status = "PASS" if rec.ok and within else "FAIL"
            timing = f"{elapsed:.2f}s of {limit:g}s"
            if not within:
                timing += " (over time limit)"
            line = f"criterion {number}: {status}  [{timing}]  {rec.detail}"
            _ACCEPTANCE[number] = line
            print(line)
        assert within, f"criterion {number} took {elapsed:.1f}s, limit {limit:g}s"

    return run


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[n])
