import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from artifact.coalg import trace_element
from artifact.structures import jones_structure, trivial_structure


@pytest.fixture(scope="session")
def jones():
    return jones_structure()


@pytest.fixture(scope="session")
def trace(jones):
    return trace_element(jones.C)


@pytest.fixture(scope="session")
def trivial_q():
    from artifact.exactnum import q
    return trivial_structure(q)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, _ in mod.CRITERIA:
        if name in mod.RESULTS:
            terminalreporter.write_line(mod.RESULTS[name])
