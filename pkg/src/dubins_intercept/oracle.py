"""Brute-force reference solvers, used by the test-suite.

None of these share code with the closed-form intercept solver.
:func:`mtip_oracle` leans on the (separately checked) closed forms of F,
L- and L+ for its feasibility test; ``slow=True`` swaps F for the
brute-force search of :func:`rdp_oracle`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .elongation import elongation_lengths, feasible_lengths, in_r3_closure
from .rdp import rdp_lengths
from .geometry import TargetMotion

TWO_PI = 2 * math.pi


@dataclass(frozen=True)
class OracleConfig:
    t_max: float | None = None
    grid_step: float = 1e-3
    refine_iters: int = 30
    slow: bool = False
    t_cap: float = 1e4

    def __post_init__(self):
        if not self.grid_step > 0:
            raise ValueError("grid_step must be positive")
        if self.t_max is not None and not self.t_max > 0:
            raise ValueError("t_max must be positive")


# --- F by search over first-arc angles -----------------------------------------


def _after_arc(a, side, rho):
    """Position and heading after a first arc of ``a`` radians.

    ``side`` is +1 for a left turn, -1 for a right turn.
    """
    x = side * rho * (np.cos(a) - 1.0)
    y = rho * np.sin(a)
    return x, y, math.pi / 2 + side * a


def _residuals(a, side, px, py, rho):
    """Miss functions for the two ways to finish after the first arc.

    line: signed distance of p from the tangent ray's supporting line.
    arc:  distance of p from the opposite-turn circle, minus rho.
    """
    x, y, th = _after_arc(a, side, rho)
    hx, hy = np.cos(th), np.sin(th)
    line = hx * (py - y) - hy * (px - x)
    # second arc turns the other way: centre on the -side normal
    cx = x + side * rho * hy
    cy = y - side * rho * hx
    arc = np.hypot(px - cx, py - cy) - rho
    return line, arc, (x, y, th, cx, cy)


def _length_line(a, side, px, py, rho):
    x, y, th = _after_arc(a, side, rho)
    d = math.cos(th) * (px - x) + math.sin(th) * (py - y)
    return rho * a + d if d >= -1e-9 else math.inf


def _length_arc(a, side, px, py, rho):
    x, y, th = _after_arc(a, side, rho)
    cx = x + side * rho * math.sin(th)
    cy = y - side * rho * math.cos(th)
    # angle swept around the second centre, turning opposite to ``side``
    start = math.atan2(y - cy, x - cx)
    end = math.atan2(py - cy, px - cx)
    b = (-side * (end - start)) % TWO_PI
    if b > TWO_PI - 1e-12:
        b = 0.0
    return rho * (a + b)


def rdp_oracle(p, rho: float = 1.0, n_grid: int = 4000) -> float:
    """Shortest two-segment path length to ``p`` by scanning the first arc."""
    if not rho > 0:
        raise ValueError("turning radius must be positive")
    px, py = float(p[0]), float(p[1])
    if px == 0.0 and py == 0.0:
        return 0.0
    grid = np.linspace(0.0, TWO_PI, n_grid + 1)
    best = math.inf
    for side in (1, -1):
        line, arc, _ = _residuals(grid, side, px, py, rho)
        for which, res, length in ((0, line, _length_line), (1, arc, _length_arc)):
            g = lambda a: float(_residuals(np.array(a), side, px, py, rho)[which])
            roots = []
            sign = np.sign(res)
            for i in np.nonzero(sign[:-1] * sign[1:] < 0)[0]:
                roots.append(brentq(g, grid[i], grid[i + 1], xtol=1e-14))
            roots += list(grid[res == 0.0])
            # touching zeros: refine local minima of |res| by golden section
            ab = np.abs(res)
            for i in np.nonzero((ab[1:-1] <= ab[:-2]) & (ab[1:-1] <= ab[2:]))[0] + 1:
                r = minimize_scalar(
                    lambda a: abs(g(a)),
                    bracket=(grid[i - 1], grid[i], grid[i + 1]),
                    method="golden",
                    tol=1e-12,
                )
                if abs(r.fun) < 1e-9 * rho and 0.0 <= r.x <= TWO_PI:
                    roots.append(r.x)
            for a in roots:
                best = min(best, length(a, side, px, py, rho))
    return best


# --- intercept time by scanning t ---------------------------------------------------


def _feasible(points, ts, rho, slow):
    if not slow:
        return feasible_lengths(points, ts, rho)
    ok = ts >= _rdp_values(points, rho, slow) - 1e-12 * rho
    # the R3 gap still comes from the closed-form elongation bounds
    r3 = in_r3_closure(points, rho)
    if r3.any():
        lm, lp = elongation_lengths(points[r3], rho)
        ok[r3] &= ~((ts[r3] > lm + 1e-12 * rho) & (ts[r3] < lp - 1e-12 * rho))
    return ok


def _rdp_values(points, rho, slow):
    if slow:
        return np.array([rdp_oracle(p, rho, n_grid=1000) for p in points])
    return rdp_lengths(points, rho)


def _window_start(m, rho, lo, hi, slow, iters=60):
    """Earliest feasible time in a cell whose ends are both infeasible, or None.

    Such a window must open where t - F(E(t)) turns nonnegative; bisect on
    that margin and test a point just past it. Windows shorter than about
    1e-8 are ignored.
    """
    p0, v = np.asarray(m.p0), np.asarray(m.v)

    def margin(t):
        return t - _rdp_values((p0 + t * v)[None, :], rho, slow)[0]

    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if margin(mid) >= 0:
            hi = mid
        else:
            lo = mid
    # probe just inside the window: the root itself can sit on a jump of F,
    # where the closed form is decided by round-off
    probe = hi + 1e-8 * max(1.0, hi)
    if _feasible((p0 + probe * v)[None, :], np.array([probe]), rho, slow)[0]:
        return hi
    return None


def mtip_oracle(m: TargetMotion, rho: float = 1.0, cfg: OracleConfig | None = None) -> float:
    """Earliest t at which a Dubins path of length t reaches E(t).

    Scans t on a uniform grid, then bisects the feasibility boundary inside
    the first feasible cell. Cells where t - F(E(t)) turns nonnegative
    between two infeasible grid points are searched too, so feasible
    windows narrower than the grid step are not skipped.
    """
    cfg = cfg or OracleConfig()
    p0 = np.asarray(m.p0, dtype=float)
    v = np.asarray(m.v, dtype=float)
    t_max = cfg.t_max or 4 * (math.hypot(*m.p0) / (1 - m.speed) + TWO_PI * rho)
    step = cfg.grid_step
    chunk = 4096
    t_lo = 0.0
    while True:
        t_hi = min(t_max, cfg.t_cap)
        n_cells = int(math.ceil((t_hi - t_lo) / step))
        start = 0
        prev = None  # (t, ok, margin) of the last point of the previous chunk
        while start <= n_cells:
            idx = np.arange(start, min(start + chunk, n_cells + 1))
            ts = t_lo + idx * step
            pts = p0 + ts[:, None] * v
            ok = _feasible(pts, ts, rho, cfg.slow)
            margin = ts - _rdp_values(pts, rho, cfg.slow)
            if prev is not None:
                ts = np.concatenate([[prev[0]], ts])
                ok = np.concatenate([[prev[1]], ok])
                margin = np.concatenate([[prev[2]], margin])
            elif ok[0]:
                if t_lo == 0.0:
                    return 0.0
            first = int(np.argmax(ok)) if ok.any() else len(ts)
            opens = np.nonzero((margin[:-1] < 0) & (margin[1:] >= 0) & ~ok[:-1] & ~ok[1:])[0]
            for k in opens[opens < first]:
                t_w = _window_start(m, rho, float(ts[k]), float(ts[k + 1]), cfg.slow)
                if t_w is not None:
                    return t_w
            if first < len(ts):
                t_ok = float(ts[first])
                t_bad = float(ts[first - 1]) if first > 0 else t_ok - step
                for _ in range(cfg.refine_iters):
                    mid = 0.5 * (t_bad + t_ok)
                    if _feasible((p0 + mid * v)[None, :], np.array([mid]), rho, cfg.slow)[0]:
                        t_ok = mid
                    else:
                        t_bad = mid
                return t_ok
            prev = (ts[-1], ok[-1], margin[-1])
            start += chunk
        if t_hi >= cfg.t_cap:
            raise RuntimeError("no feasible intercept time within the horizon")
        t_lo = t_lo + (n_cells + 1) * step
        t_max = 2 * t_max


# --- dense sampling zero finder ------------------------------------------------------


def dense_zero_scan(f, n: int = 100_000, a: float | None = None, b: float | None = None) -> list[float]:
    """Zeros by sign changes over ``n`` uniform samples, polished with brentq.

    Misses touching zeros and pairs closer than the sample spacing.
    """
    if n < 1000:
        raise ValueError("need at least 1000 samples")
    a = f.a if a is None else a
    b = f.b if b is None else b
    ts = np.linspace(a, b, n)
    vals = f.sample(ts) if hasattr(f, "sample") else np.array([f(t) for t in ts])
    # round-off level values count as exact zeros
    vals = np.where(np.abs(vals) <= 1e-14 * max(1.0, float(np.max(np.abs(vals)))), 0.0, vals)
    zeros = [float(t) for t in ts[vals == 0.0]]
    s = np.sign(vals)
    for i in np.nonzero(s[:-1] * s[1:] < 0)[0]:
        zeros.append(brentq(lambda t: float(f(t)), ts[i], ts[i + 1], xtol=1e-15, rtol=1e-15))
    return sorted(zeros)
