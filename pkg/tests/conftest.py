import pytest

from lambdag.rootsys import build_root_system

SUITE = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2"]
NON_SIMPLY_LACED = ["B2", "B3", "C3", "G2"]
SMALL = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


@pytest.fixture(scope="session")
def rs_of():
    return build_root_system


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: runs longer than a few seconds (F4)")
