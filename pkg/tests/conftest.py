import sys
from pathlib import Path

import pytest
from hypothesis import settings

from twistalex.document import load_document

FIXTURES = Path(__file__).parent / "fixtures"

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def fixture_path():
    return lambda name: str(FIXTURES / f"{name}.yaml")


@pytest.fixture
def load():
    return lambda name, **kw: load_document(str(FIXTURES / f"{name}.yaml"), **kw)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
