import math

import numpy as np
import pytest

from conftest import CASES, random_motion
from dubins_intercept.geometry import TargetMotion
from dubins_intercept.mtip import solve_mtip
from dubins_intercept.oracle import OracleConfig, mtip_oracle, rdp_oracle
from dubins_intercept.rdp import rdp_length


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(grid_step=0.0)
    with pytest.raises(ValueError):
        OracleConfig(t_max=-1.0)


def test_rdp_oracle_examples():
    assert rdp_oracle((0, 5)) == pytest.approx(5.0, abs=1e-3)
    assert rdp_oracle((0, 0)) == 0.0
    assert rdp_oracle((2, 0)) == pytest.approx(math.pi, abs=1e-3)
    with pytest.raises(ValueError):
        rdp_oracle((1, 1), 0.0)


def test_rdp_oracle_radius(rng):
    for p in rng.uniform(-6, 6, (20, 2)):
        assert rdp_oracle(p, 1.7) == pytest.approx(rdp_length(p, 1.7), abs=1e-3)


def test_case_goldens():
    assert mtip_oracle(CASES["A"]) == pytest.approx(18.45, abs=0.01)
    assert mtip_oracle(CASES["B"]) == pytest.approx(5.43, abs=0.01)
    assert mtip_oracle(CASES["D"]) == pytest.approx(solve_mtip(CASES["D"]).t_m, abs=0.01)


def test_horizon_extension():
    m = TargetMotion((0.0, 40.0), (0.0, 0.5))
    assert mtip_oracle(m, cfg=OracleConfig(t_max=1.0)) == pytest.approx(80.0, abs=1e-6)


def test_horizon_exhaustion():
    m = TargetMotion((0.0, 40.0), (0.0, 0.5))
    with pytest.raises(RuntimeError):
        mtip_oracle(m, cfg=OracleConfig(t_max=1.0, t_cap=10.0))


def test_slow_mode_agrees(rng):
    for _ in range(2):
        m = random_motion(rng, box=2.0)
        fast = mtip_oracle(m)
        slow = mtip_oracle(m, cfg=OracleConfig(t_max=fast + 0.05, grid_step=2e-2, refine_iters=20, slow=True))
        assert slow == pytest.approx(fast, abs=1e-4)


def test_feasibility_upward_closed_outside_r3(rng):
    from dubins_intercept.elongation import feasible_lengths, in_r3

    pts = rng.uniform(-6, 6, (200, 2))
    pts = pts[~in_r3(pts)]
    F = np.array([rdp_length(p) for p in pts])
    for extra in (0.0, 0.5, 5.0):
        assert feasible_lengths(pts, F + extra).all()
