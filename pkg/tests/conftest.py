from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from superyangian.superdata import SuperSize

settings.register_profile("repo", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True)
settings.load_profile("repo")

rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))


@pytest.fixture(params=[(2, 3), (3, 2)], ids=["2|3", "3|2"])
def size(request):
    return SuperSize(*request.param)


@pytest.fixture
def size23():
    return SuperSize(2, 3)


# lines recorded by the acceptance suite, echoed at the end of the run
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[0].lstrip("#"))):
            terminalreporter.write_line(line)
