"""Elongation bounds L-/L+ for points in R3.

Through a point p in R3 (x >= 0) pass exactly two radius-rho circles that
are externally tangent to the initial left circle. Each gives an L_a R path
to p; their lengths L- < L+ bound the band of path lengths that cannot
reach p. Points with x < 0 are handled by reflection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import LEFT, RIGHT, START, TWO_PI, ANGLE_TOL, DubinsPath, Segment
from .rdp import R3, classify_region, rdp_lengths

# |s - 3 rho| below this (relative) counts as the double-tangency boundary
_DOUBLE_ROOT = 1e-9


@dataclass(frozen=True)
class ElongationPair:
    l_minus: float
    l_plus: float
    alpha_minus: float
    alpha_plus: float
    beta_minus: float
    beta_plus: float
    xi: float
    rho: float = 1.0
    degenerate: bool = False

    def paths(self) -> tuple[DubinsPath, DubinsPath]:
        """The L_{alpha-}R and L_{alpha+}R paths, in that order."""
        return tuple(
            DubinsPath(START, (Segment(LEFT, a), Segment(RIGHT, b)), self.rho)
            for a, b in ((self.alpha_minus, self.beta_minus), (self.alpha_plus, self.beta_plus))
        )


def _wrap(a):
    a = np.mod(a, TWO_PI)
    return np.where(a >= TWO_PI - ANGLE_TOL, 0.0, a)


def _elongation_arrays(x, y, rho):
    """Vectorized core: (l_minus, l_plus, a_minus, a_plus, b_minus, b_plus, xi, s)."""
    qx = x + rho
    s = np.hypot(qx, y)
    xi = np.arctan2(y, qx)
    with np.errstate(invalid="ignore", divide="ignore"):
        cosd = np.clip((3 * rho * rho + s * s) / (4 * rho * s), -1.0, 1.0)
    delta = np.arccos(cosd)
    out = []
    for a in (xi - delta, xi + delta):
        a = _wrap(a)
        cx = -rho + 2 * rho * np.cos(a)
        cy = 2 * rho * np.sin(a)
        b = _wrap(a + math.pi - np.arctan2(y - cy, x - cx))
        out.append((a, b, rho * (a + b)))
    (am, bm, lm), (ap, bp, lp) = out
    return lm, lp, am, ap, bm, bp, xi, s


def elongation(p, rho: float = 1.0) -> ElongationPair:
    """L-/L+ for a point of R3 with x >= 0."""
    x, y = float(p[0]), float(p[1])
    if x < 0 or classify_region((x, y), rho).tag != R3:
        raise ValueError(f"point {p} is not in R3 with x >= 0")
    lm, lp, am, ap, bm, bp, xi, s = (
        float(v) for v in _elongation_arrays(np.array(x), np.array(y), rho)
    )
    degenerate = abs(s - 3 * rho) <= _DOUBLE_ROOT * rho
    return ElongationPair(lm, lp, am, ap, bm, bp, xi, rho, degenerate)


def elongation_lengths(points, rho: float = 1.0):
    """(L-, L+) for an ``(n, 2)`` array; reflects points with x < 0.

    No region check; callers mask out points outside R3.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    lm, lp, *_ = _elongation_arrays(np.abs(pts[:, 0]), pts[:, 1], rho)
    return lm, lp


def in_r3(points, rho: float = 1.0) -> np.ndarray:
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    x, y = pts[:, 0], pts[:, 1]
    eps = 1e-12 * rho * rho
    dr2 = (x - rho) ** 2 + y * y
    dl2 = (x + rho) ** 2 + y * y
    in_r2 = (dr2 <= rho * rho + eps) | (dl2 <= rho * rho + eps)
    return (y > 0) & (dr2 <= 9 * rho * rho + eps) & (dl2 <= 9 * rho * rho + eps) & ~in_r2


def in_r3_closure(points, rho: float = 1.0, slack: float = 1e-12) -> np.ndarray:
    """R3 together with its boundary arcs, including the upper halves of C_r, C_l."""
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    x, y = pts[:, 0], pts[:, 1]
    eps = slack * rho * rho
    dr2 = (x - rho) ** 2 + y * y
    dl2 = (x + rho) ** 2 + y * y
    r2 = rho * rho
    return (y > 0) & (dr2 >= r2 - eps) & (dl2 >= r2 - eps) & (dr2 <= 9 * r2 + eps) & (dl2 <= 9 * r2 + eps)


def feasible_lengths(points, lengths, rho: float = 1.0, tol: float = 1e-12) -> np.ndarray:
    """Whether some Dubins path of exactly the given length reaches each point.

    The gap (L-, L+) is applied on the closure of R3: the set of reachable
    (point, length) pairs is closed, and on the upper arcs of C_r, C_l the
    lower window [F, L-] shrinks to the single length F.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    L = np.broadcast_to(np.asarray(lengths, dtype=float), (len(pts),))
    f = rdp_lengths(pts, rho)
    ok = L >= f - tol * rho
    r3 = in_r3_closure(pts, rho)
    if np.any(r3):
        lm, lp = elongation_lengths(pts[r3], rho)
        Lr = L[r3]
        gap = (Lr > lm + tol * rho) & (Lr < lp - tol * rho)
        ok[r3] &= ~gap
    return ok


def feasible_length(p, rho: float, L: float) -> bool:
    if L < 0:
        raise ValueError("length must be nonnegative")
    return bool(feasible_lengths([p], [L], rho)[0])
