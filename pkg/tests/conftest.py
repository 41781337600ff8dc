import math

import numpy as np
import pytest
from hypothesis import settings

from dubins_intercept.geometry import TargetMotion

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

SQ3 = math.sqrt(3.0)

CASES = {
    "A": TargetMotion((5.0, 2.0), (0.55, -0.55)),
    "B": TargetMotion((1.2, 0.0), (-0.1, -0.1)),
    "C": TargetMotion((-3.0, 0.8), (0.15, 0.0)),
    "D": TargetMotion((-(SQ3 + 1) / 2, SQ3 / 2), (SQ3 / (4 * math.pi), 0.0)),
}


def random_motion(rng, box=6.0, vmax=0.8):
    p0 = rng.uniform(-box, box, 2)
    speed = vmax * math.sqrt(rng.uniform())
    ang = rng.uniform(0.0, 2 * math.pi)
    return TargetMotion((p0[0], p0[1]), (speed * math.cos(ang), speed * math.sin(ang)))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
