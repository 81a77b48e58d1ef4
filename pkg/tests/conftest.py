import os
import sys

from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# ----- acceptance report -------------------------------------------------------------

ACCEPTANCE = {}


def record_criterion(number: int, text: str, ok: bool) -> None:
    """Store one part of an acceptance criterion; parts of a criterion are ANDed."""
    prev = ACCEPTANCE.get(number)
    if prev is None:
        ACCEPTANCE[number] = (ok, [text])
    else:
        ACCEPTANCE[number] = (prev[0] and ok, prev[1] + [text])
    print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {text}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, parts = ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {number}: "
                                    + "; ".join(parts))
