import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def golden():
    from pakernel.corpus import golden as g

    return g()


@pytest.fixture(scope="session")
def two_line():
    from pakernel.corpus import add_zero_one

    return add_zero_one()


CRITERIA: list[str] = []  # filled by test_acceptance, shown after the run


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)
