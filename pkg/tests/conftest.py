import sys

import mpmath as mp
import pytest


@pytest.fixture(autouse=True)
def _oracle_precision():
    # modules set mp.dps at import; pin it per test so import order cannot lower it
    with mp.workdps(40):
        yield


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
