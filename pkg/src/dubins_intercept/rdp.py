"""Shortest Dubins path to a point with free terminal heading.

The optimal path is one of RS, LS, RL, LR or a substring of them, so the
solver builds every candidate from circle tangency and keeps the shortest.
The candidate table is vectorized; :func:`rdp_lengths` evaluates F on whole
arrays of points, which the brute-force scans rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    LEFT,
    LINE,
    RIGHT,
    START,
    TWO_PI,
    ANGLE_TOL,
    DubinsPath,
    Segment,
)

R1, R2, R3 = "R1", "R2", "R3"
RIGHT_HALF, LEFT_HALF, AXIS = "RightHalf", "LeftHalf", "Axis"
# closed-set membership slack, relative to rho**2
_REGION_EPS = 1e-12

# column order of the candidate table
_COLUMNS = ("RS", "LS", "LR", "LR", "RL", "RL")


@dataclass(frozen=True)
class Region:
    tag: str
    side: str


@dataclass(frozen=True)
class RdpSolution:
    length: float
    path: DubinsPath
    family: str


def classify_region(p, rho: float = 1.0) -> Region:
    if not rho > 0:
        raise ValueError("turning radius must be positive")
    x, y = float(p[0]), float(p[1])
    side = RIGHT_HALF if x > 0 else LEFT_HALF if x < 0 else AXIS
    eps = _REGION_EPS * rho * rho
    dr2 = (x - rho) ** 2 + y * y
    dl2 = (x + rho) ** 2 + y * y
    if dr2 <= rho * rho + eps or dl2 <= rho * rho + eps:
        return Region(R2, side)
    if y > 0 and dr2 <= 9 * rho * rho + eps and dl2 <= 9 * rho * rho + eps:
        return Region(R3, side)
    return Region(R1, side)


def region_boundary_distance(p, rho: float = 1.0) -> float:
    """Distance from ``p`` to the nearest circle bounding R1, R2 or R3.

    Conservative: all four circles count, even where they do not separate
    two regions.
    """
    x, y = float(p[0]), float(p[1])
    dr = math.hypot(x - rho, y)
    dl = math.hypot(x + rho, y)
    return min(abs(dr - rho), abs(dl - rho), abs(dr - 3 * rho), abs(dl - 3 * rho))


def _wrap(a):
    a = np.mod(a, TWO_PI)
    return np.where(a >= TWO_PI - ANGLE_TOL, 0.0, a)


def _cs(x, y, rho, side):
    """Arc-then-line candidates. ``side`` is +1 for L, -1 for R."""
    wx = x + side * rho
    dist2 = wx * wx + y * y
    ok = dist2 >= rho * rho * (1 - 1e-12)
    d = np.sqrt(np.maximum(dist2 - rho * rho, 0.0))
    psi = np.arctan2(y, wx)
    if side > 0:
        arc = _wrap(psi - np.arctan2(d, rho))
    else:
        arc = _wrap(math.pi - psi - np.arctan2(d, rho))
    return arc, d, np.where(ok, rho * arc + d, np.nan)


def _lr(x, y, rho, branch):
    """Left arc then right arc; ``branch`` +1 / -1 picks the tangency."""
    qx = x + rho
    s = np.hypot(qx, y)
    ok = (s >= rho * (1 - 1e-12)) & (s <= 3 * rho * (1 + 1e-12))
    with np.errstate(invalid="ignore", divide="ignore"):
        cosd = np.clip((3 * rho * rho + s * s) / (4 * rho * s), -1.0, 1.0)
    a1 = _wrap(np.arctan2(y, qx) + branch * np.arccos(np.where(ok, cosd, 1.0)))
    cx = -rho + 2 * rho * np.cos(a1)
    cy = 2 * rho * np.sin(a1)
    a2 = _wrap(a1 + math.pi - np.arctan2(y - cy, x - cx))
    return a1, a2, np.where(ok, rho * (a1 + a2), np.nan)


def _candidate_table(x, y, rho):
    """Arrays of shape (6, n): first magnitude, second magnitude, length."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    rows = [
        _cs(x, y, rho, -1),
        _cs(x, y, rho, +1),
        _lr(x, y, rho, +1),
        _lr(x, y, rho, -1),
    ]
    # RL is the mirror image of LR
    rows += [_lr(-x, y, rho, +1), _lr(-x, y, rho, -1)]
    first = np.stack([r[0] for r in rows])
    second = np.stack([r[1] for r in rows])
    length = np.stack([r[2] for r in rows])
    return first, second, length


def rdp_lengths(points, rho: float = 1.0) -> np.ndarray:
    """F evaluated on an ``(n, 2)`` array of points."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    _, _, length = _candidate_table(pts[:, 0], pts[:, 1], rho)
    return np.nanmin(length, axis=0)


def rdp_length(p, rho: float = 1.0) -> float:
    return solve_rdp(p, rho).length


def _path_from_column(col, first, second, rho) -> DubinsPath:
    word = _COLUMNS[col]
    kinds = {"S": LINE, "L": LEFT, "R": RIGHT}
    segs = (Segment(kinds[word[0]], float(first)), Segment(kinds[word[1]], float(second)))
    return DubinsPath(START, segs, rho)


def solve_rdp(p, rho: float = 1.0) -> RdpSolution:
    if not rho > 0:
        raise ValueError("turning radius must be positive")
    first, second, length = _candidate_table([float(p[0])], [float(p[1])], rho)
    col = int(np.nanargmin(length[:, 0]))
    path = _path_from_column(col, first[col, 0], second[col, 0], rho)
    return RdpSolution(path.length, path, path.word or "Null")
