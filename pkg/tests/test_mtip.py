import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import CASES, random_motion
from dubins_intercept.elongation import elongation_lengths
from dubins_intercept.geometry import Configuration, TargetMotion, rollout, target_position, terminal
from dubins_intercept.mtip import (
    CcCoefficients,
    cc_coefficients,
    cs_coefficients,
    gcc_chain,
    gcc_zeros,
    gcs_function,
    gcs_value,
    gcs_zeros,
    solve_cc_family,
    solve_drift,
    solve_intercept,
    solve_mtip,
    solve_rs_family,
)
from dubins_intercept.oracle import dense_zero_scan, mtip_oracle
from dubins_intercept.rdp import R1, R2, classify_region, rdp_length

WORDS = {"RS", "LS", "LR", "RL", "R", "L", "S"}


def test_cs_coefficients_fixed_entries():
    m = CASES["A"]
    c = cs_coefficients(m)
    assert c.A3 == 0.55 and c.A4 == 0.55
    assert c.a1 == 1.0 and c.a2 == pytest.approx(5 / 0.55)
    # x0 = 0 kills a2
    c = cs_coefficients(TargetMotion((0.0, 1.5), (0.2, 0.3)))
    assert c.a2 == 0.0
    assert c.A5 == pytest.approx(c.a1 * 0.3 - c.a3 * 0.2 + 1.0)


def test_cs_coefficients_match_parametrized_form():
    # with |v_x| > 0 the printed a2/a3 parametrization gives the same A's
    rng = np.random.default_rng(1)
    for _ in range(50):
        m = random_motion(rng)
        (x0, y0), (vx, vy) = m.p0, m.v
        c = cs_coefficients(m)
        assert c.A5 == pytest.approx(c.a1 * vy - c.a3 * vx + 1.0, abs=1e-9)
        assert c.A1 == pytest.approx(c.a3 - c.a2 * vy - vx, abs=1e-9)
        assert c.A2 == pytest.approx(c.a2 * vx - c.a1 - vy, abs=1e-9)


def test_gcs_value_examples():
    c = cs_coefficients(CASES["A"])
    assert gcs_value(c, 0.0) == pytest.approx(c.A2 + c.A5)
    assert gcs_value(c, math.pi) == pytest.approx(-c.A2 - math.pi * c.A3 + c.A5)
    zs = gcs_zeros(c)
    assert any(abs(gcs_value(c, a)) <= 1e-8 for a in zs)


def test_case_a_rs_family():
    cands = solve_rs_family(CASES["A"])
    assert any(abs(c.t - 18.45) <= 0.01 and c.family == "RS" for c in cands)


def test_case_a_zeros_match_dense_scan():
    c = cs_coefficients(CASES["A"])
    assert list(gcs_zeros(c)) == pytest.approx(dense_zero_scan(gcs_function(c), 100_000), abs=1e-8)


def test_case_b_cc_family():
    cands = solve_cc_family(CASES["B"])
    hit = [c for c in cands if abs(c.t - 5.43) <= 0.01]
    assert hit and hit[0].word == "LR"
    assert hit[0].terminal == pytest.approx((0.66, -0.54), abs=0.01)
    assert classify_region(hit[0].terminal).tag == R2
    etas = list(gcc_zeros(cc_coefficients(CASES["B"])))
    # eta ~ 0.904 is an extraneous root of the squared equation: it would
    # need a negative first arc. The smallest zero that survives is 5.43.
    assert etas[0] == pytest.approx(0.9038, abs=1e-3)
    assert min(c.t for c in cands) == pytest.approx(5.43, abs=0.01)
    assert any(abs(e - 5.431213) <= 1e-5 for e in etas)


def test_case_c_mirror_has_ls():
    cands = solve_rs_family(CASES["C"].mirrored())
    assert min(c.t for c in cands) == pytest.approx(3.1167, abs=1e-3)


def test_stationary_limit():
    s = solve_mtip(TargetMotion((0.0, 5.0), (1e-3, 0.0)))
    assert s.t_m == pytest.approx(5.0, abs=1e-2)
    assert "S" in s.candidate.word
    with pytest.raises(ValueError):
        cc_coefficients(TargetMotion((1.0, 1.0), (0.0, 0.0)))
    assert solve_cc_family(TargetMotion((1.0, 1.0), (0.0, 0.0))) == []
    s = solve_mtip(TargetMotion((0.0, 5.0), (0.0, 0.0)))
    assert s.t_m == 5.0 and s.family == "S"


def test_pole_free_rs():
    # v_y = 0 and y0 = 0: A4 = 0
    m = TargetMotion((3.0, 0.0), (0.3, 0.0))
    c = cs_coefficients(m)
    assert c.A4 == 0
    assert solve_mtip(m).t_m == pytest.approx(mtip_oracle(m), abs=2e-3)


def test_vx_zero_handled():
    m = TargetMotion((4.0, 1.0), (0.0, 0.5))
    c = cs_coefficients(m)
    assert math.isnan(c.a2)
    assert solve_mtip(m).t_m == pytest.approx(mtip_oracle(m), abs=2e-3)


def test_gcc_chain_polynomial_case():
    c = CcCoefficients(1.0, 0.0, -5.0, 0.0, 4.0, 0.0, 0.0, 0.0, 0.0, 0, 0, 0)
    chain = gcc_chain(c, 3.0)
    # (x^2 - 1)(x^2 - 4)
    assert list(gcc_zeros(c, 3.0)) == pytest.approx([1.0, 2.0], abs=1e-10)
    assert chain[4](0.7) == pytest.approx(24.0)
    with pytest.raises(ValueError):
        gcc_chain(c, 0.0)


@given(st.floats(0.05, 4 * math.pi - 0.05))
def test_gcc_chain_finite_differences(eta):
    c = cc_coefficients(CASES["B"])
    chain = gcc_chain(c)
    h = 1e-6
    for f, df in zip(chain, chain[1:]):
        fd = (f(eta + h) - f(eta - h)) / (2 * h)
        assert abs(df(eta) - fd) <= 1e-6 * max(1.0, abs(df(eta)), abs(f(eta)))


def test_candidates_are_valid(rng):
    for _ in range(40):
        m = random_motion(rng)
        s = solve_mtip(m)
        for c in s.all_candidates:
            end = terminal(c.path)
            goal = target_position(m, c.t)
            assert math.hypot(end.x - goal[0], end.y - goal[1]) <= 1e-8
            assert abs(c.t - c.path.length) <= 1e-9
            assert c.t > 0
        assert s.t_m == min(c.t for c in s.all_candidates)


def test_tie_break_prefers_fewer_segments():
    # straight ahead: S beats any degenerate two-segment candidate
    s = solve_mtip(TargetMotion((0.0, 3.0), (0.0, 0.2)))
    assert s.family == "S"
    assert s.t_m == pytest.approx(3.0 / 0.8)


def test_mirror_invariance(rng):
    for _ in range(40):
        m = random_motion(rng)
        a, b = solve_mtip(m), solve_mtip(m.mirrored())
        assert a.t_m == b.t_m
        if all(abs(c.t - a.t_m) > 1e-9 for c in a.all_candidates if c is not a.candidate):
            assert b.candidate.word == a.candidate.word.translate(str.maketrans("LR", "RL"))


def test_case_d_labels():
    s = solve_mtip(CASES["D"])
    assert s.family in ("LplusR", "RplusL")
    x, y = s.intercept_point
    _, lp = elongation_lengths([(abs(x), y)])
    assert s.t_m == pytest.approx(lp[0], abs=1e-8)
    assert abs(s.t_m - rdp_length((x, y))) > 1.0


def test_structural_laws(rng):
    for _ in range(60):
        m = random_motion(rng)
        s = solve_mtip(m)
        assert s.verified
        assert s.candidate.word in WORDS
        assert s.t_m >= rdp_length(s.intercept_point) - 1e-9


def test_solve_intercept_world_frame():
    start = Configuration(2.0, -1.0, 0.3)
    sol, frame = solve_intercept(start, 2.0, (8.0, 3.0), (0.4, -0.5))
    t_world = frame.time_to_world(sol.t_m)
    hit_world = (8.0 + 0.4 * t_world, 3.0 - 0.5 * t_world)
    assert frame.point_to_world(sol.intercept_point) == pytest.approx(hit_world, abs=1e-8)
    end, _ = rollout(frame.path_to_world(sol.path))
    assert (end.x, end.y) == pytest.approx(hit_world, abs=1e-8)


def test_drift_examples():
    d = solve_drift((0.0, 5.0), (0.0, 0.0))
    assert d.t_m == pytest.approx(5.0) and d.solution.family == "S"
    d = solve_drift((3.0, 3.0), (0.3, 0.0))
    assert d.ground_track[-1, 1:3] == pytest.approx((3.0, 3.0), abs=1e-8)
    assert len(d.solution.path.segments) <= 2
    assert d.t_m == solve_mtip(TargetMotion((3.0, 3.0), (-0.3, 0.0))).t_m
    with pytest.raises(ValueError):
        solve_drift((1.0, 1.0), (0.8, 0.8))
