import sys
from pathlib import Path

import pytest

from quatlogic.library import example

DATA = Path(__file__).parent / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def decoder():
    return example("decoder")


@pytest.fixture
def demux():
    return example("demux")


@pytest.fixture
def mux4():
    return example("mux4")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance.VERDICTS:
        terminalreporter.write_line(line)
