import os

import pytest
from hypothesis import HealthCheck, settings

from inducedpoly.errors import OracleAccuracyError

settings.register_profile(
    "default", deadline=None, max_examples=40,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_ACCEPTANCE = []


@pytest.hookimpl(hookwrapper=True)
def pytest_pyfunc_call(pyfuncitem):
    # an oracle that cannot certify its own accuracy must not decide a test
    outcome = yield
    exc = outcome.excinfo
    if exc is not None and issubclass(exc[0], OracleAccuracyError):
        outcome.force_exception(pytest.skip.Exception(f"oracle accuracy not reached: {exc[1]}"))


@pytest.fixture
def report():
    def record(name, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {name}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
