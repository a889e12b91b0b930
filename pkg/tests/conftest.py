import sys

import pytest

from oilcurb import FieldRecord, build_curve, calibrate, default_curve


@pytest.fixture(scope="session")
def cal_sr():
    return calibrate(horizon="short")


@pytest.fixture(scope="session")
def cal_lr():
    return calibrate(horizon="long")


@pytest.fixture(scope="session")
def curve_sr():
    return default_curve("short")


@pytest.fixture(scope="session")
def curve_lr():
    return default_curve("long")


@pytest.fixture
def two_fields():
    return [FieldRecord("A", 1.0, 5.0, 10.0), FieldRecord("B", 2.0, 3.0, 20.0)]


@pytest.fixture
def small_curve(two_fields):
    # steps [(3, 2), (5, 3)]
    return build_curve(two_fields, "short")


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
