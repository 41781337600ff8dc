import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from dubins_intercept.mtip import _trig_poly, trig_scaffold, trig_zeros
from dubins_intercept.oracle import dense_zero_scan
from dubins_intercept.rootfinding import (
    SmoothFn,
    all_zeros,
    bisect,
    derivative_chain_zeros,
    quartic_real_roots,
)


def poly_fn(coeffs, a, b):
    coeffs = np.asarray(coeffs, dtype=float)
    return SmoothFn(lambda t: float(np.polyval(coeffs, t)), a, b, lambda t: np.polyval(coeffs, t))


def test_bisect_basic():
    assert bisect(SmoothFn(lambda t: t - 1, 0, 2), 0, 2) == pytest.approx(1, abs=1e-11)
    assert bisect(SmoothFn(math.cos, 0, math.pi), 0, math.pi) == pytest.approx(math.pi / 2, abs=1e-11)
    with pytest.raises(ValueError):
        bisect(SmoothFn(lambda t: t * t + 1, -1, 1), -1, 1)


def test_all_zeros_sine():
    z = all_zeros(SmoothFn(math.sin, 0, 2 * math.pi), [math.pi / 2, 3 * math.pi / 2])
    assert list(z) == pytest.approx([0, math.pi, 2 * math.pi], abs=1e-10)
    assert z.critical_points[0] == 0 and z.critical_points[-1] == 2 * math.pi


def test_all_zeros_none():
    assert len(all_zeros(SmoothFn(lambda t: t * t + 1, -1, 1), [0.0])) == 0


def test_tangential_zero_caught_at_critical_point():
    z = all_zeros(SmoothFn(lambda t: (t - 0.3) ** 2, -1, 1), [0.3])
    assert list(z) == [0.3]


def test_chain_sin_cos():
    chain = [SmoothFn(math.sin, 0, 2 * math.pi), SmoothFn(math.cos, 0, 2 * math.pi)]
    z = derivative_chain_zeros(chain, [0.0, math.pi, 2 * math.pi])
    assert list(z) == pytest.approx([0, math.pi, 2 * math.pi], abs=1e-10)
    with pytest.raises(ValueError):
        derivative_chain_zeros([], [])


def test_degree6_known_roots(rng):
    for _ in range(50):
        roots = np.sort(rng.uniform(-3, 3, 6))
        if np.min(np.diff(roots)) < 1e-3:
            continue
        c = np.poly(roots)
        crit = np.roots(np.polyder(c))
        crit = np.sort(crit[np.abs(crit.imag) < 1e-9].real)
        z = all_zeros(poly_fn(c, -4, 4), crit)
        assert list(z) == pytest.approx(list(roots), abs=1e-9)


def test_quintic_chain(rng):
    for _ in range(50):
        roots = np.sort(rng.uniform(-2, 2, 5))
        if np.min(np.diff(roots)) < 1e-2:
            continue
        p = np.poly(roots)
        d1, d2 = np.polyder(p), np.polyder(p, 2)
        d3_roots = np.roots(np.polyder(p, 3))
        base = np.sort(d3_roots[np.abs(d3_roots.imag) < 1e-12].real)
        chain = [poly_fn(p, -3, 3), poly_fn(d1, -3, 3), poly_fn(d2, -3, 3)]
        z = derivative_chain_zeros(chain, base)
        assert list(z) == pytest.approx(list(roots), abs=1e-9)


def test_quartic_examples():
    assert quartic_real_roots(1, 0, 0, 0, -1) == pytest.approx([-1, 1])
    c = np.polymul(np.poly([2, 2]), [1, 0, 1])
    assert quartic_real_roots(*c) == pytest.approx([2], abs=1e-7)
    assert quartic_real_roots(0, 0, 1, -3, 2) == pytest.approx([1, 2])
    assert quartic_real_roots(0, 0, 0, 2, -1) == pytest.approx([0.5])
    assert quartic_real_roots(0, 0, 0, 0, 3) == []
    with pytest.raises(ValueError):
        quartic_real_roots(0, 0, 0, 0, 0)


def test_quartic_against_eigenvalues(rng):
    for _ in range(200):
        c = rng.normal(size=5)
        got = quartic_real_roots(*c)
        ref = np.roots(c)
        ref = np.sort(ref[np.abs(ref.imag) <= 1e-7 * np.maximum(1, np.abs(ref))].real)
        assert len(got) == len(ref)
        assert got == pytest.approx(list(ref), abs=1e-8)
        for r in got:
            assert abs(np.polyval(c, r)) <= 1e-9 * np.max(np.abs(c)) * max(1, abs(r)) ** 4


def test_removable_pole_piece():
    # cos t + 1 vanishes with sin t at pi; the zero beyond pi must not be lost
    z = trig_zeros(0.0, 1.0, 0.0, 0.5, 1.0)
    assert len(z) == 2
    f = _trig_poly((1.0,), 1.0, 0.0, 0.0, 0.5, 0.0, 2 * math.pi)
    assert all(abs(f(t)) <= 1e-9 for t in z)


@given(st.lists(st.floats(-5, 5), min_size=5, max_size=5))
def test_trig_scaffold_completeness(A):
    A1, A2, A3, A4, A5 = A
    f = _trig_poly((A5,), A2, A1, A3, A4, 0.0, 2 * math.pi)
    z = trig_zeros(A1, A2, A3, A4, A5)
    ts = np.linspace(0, 2 * math.pi, 20001)
    v = f.sample(ts)
    changes = np.count_nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)
    # every sign change seen on a fine grid is found
    assert len(z) >= changes
    scale = max(1, np.max(np.abs(v)))
    for t in z:
        assert abs(f(t)) <= 1e-8 * scale


def test_dense_zero_scan_basics():
    z = dense_zero_scan(SmoothFn(math.sin, 0, 2 * math.pi), 10_000)
    assert z == pytest.approx([0, math.pi, 2 * math.pi], abs=1e-6)
    assert dense_zero_scan(SmoothFn(lambda t: 1.0, 0, 1), 1000) == []
    with pytest.raises(ValueError):
        dense_zero_scan(SmoothFn(math.sin, 0, 1), 10)


def test_deterministic():
    f = _trig_poly((0.3,), 1.0, -2.0, 0.5, 0.25, 0.0, 2 * math.pi)
    s = trig_scaffold(-2.0, 1.0, 0.5, 0.25, 0.3)
    assert all_zeros(f, s) == all_zeros(f, s)
