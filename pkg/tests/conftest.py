import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

SQ15 = math.sqrt(15.0)


@pytest.fixture
def V():
    """Shape matrix shared by the raking chi-square covariances."""
    return np.array([[1 / 5, -1 / SQ15], [-1 / SQ15, 1 / 3]])


@pytest.fixture
def ref():
    from auxpower.bench import reference_distribution

    return reference_distribution()


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
