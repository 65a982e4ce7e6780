import numpy as np
import pytest

from gorsum.fields import GF, QQ

F101 = GF(101)


@pytest.fixture(params=["QQ", "GF(101)", "GF(2)"])
def field(request):
    return {"QQ": QQ, "GF(101)": F101, "GF(2)": GF(2)}[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE
    except ImportError:
        return
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[n])
