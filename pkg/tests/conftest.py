import math
import sys

import numpy as np
import pytest
from hypothesis import settings

from tessella.geometry import Isometry, make_polygon

settings.register_profile("repo", deadline=None, max_examples=50)
settings.load_profile("repo")


def regular(n: int, r: float = 1.0, phase: float = 0.0):
    return make_polygon([complex(r * math.cos(phase + 2 * math.pi * k / n),
                                 r * math.sin(phase + 2 * math.pi * k / n)) for k in range(n)])


def random_isometry(rng: np.random.Generator) -> Isometry:
    ang = rng.uniform(0, 360)
    return Isometry.from_degrees(ang, (rng.uniform(-5, 5), rng.uniform(-5, 5)), bool(rng.integers(2)))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(verdicts[n])
