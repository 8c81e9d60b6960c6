import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_VERDICTS = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_VERDICTS] = {}


@pytest.fixture
def verdict(request):
    """``verdict(criterion, ok, detail)`` records one check for the acceptance summary."""
    log = request.config.stash[_VERDICTS]

    def record(criterion: int, ok: bool, detail: str) -> bool:
        log.setdefault(criterion, []).append((bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_VERDICTS, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(log):
        checks = log[criterion]
        status = "PASS" if all(ok for ok, _ in checks) else "FAIL"
        detail = "; ".join(("" if ok else "[failed] ") + d for ok, d in checks)
        terminalreporter.write_line(f"criterion {criterion:>2}: {status}  {detail}")
