import os

import pytest
from hypothesis import settings

from fermatsg.grading import Weight

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

TEST_WEIGHTS = [(2, 2, 2), (3, 3, 3), (2, 4, 4), (2, 3, 6), (3, 4, 5)]
ELLIPTIC = [(3, 3, 3), (2, 4, 4), (2, 3, 6)]


@pytest.fixture(params=TEST_WEIGHTS, ids=lambda w: "w%d%d%d" % w)
def weight(request):
    return Weight.of(request.param)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
