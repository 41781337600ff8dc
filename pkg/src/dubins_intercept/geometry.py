"""Planar poses, two-segment Dubins paths and their exact rollout.

Everything downstream works in a normalized frame: the pursuer starts at
the origin heading along +y with unit speed. :class:`Frame` maps an
arbitrary start pose and speed into that frame and back.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

TWO_PI = 2.0 * math.pi
ANGLE_TOL = 1e-12
# segments shorter than this (radians, or length / rho) are dropped
ZERO_SEGMENT = 1e-10

LEFT = "L"
RIGHT = "R"
LINE = "S"
_TURN = {LEFT: 1.0, RIGHT: -1.0, LINE: 0.0}
_MIRROR_KIND = {LEFT: RIGHT, RIGHT: LEFT, LINE: LINE}


def wrap_angle(theta: float) -> float:
    """Map an angle into [0, 2pi); values within ANGLE_TOL of 2pi become 0."""
    a = math.fmod(theta, TWO_PI)
    if a < 0.0:
        a += TWO_PI
    if a >= TWO_PI - ANGLE_TOL:
        a = 0.0
    return a


@dataclass(frozen=True)
class Configuration:
    x: float
    y: float
    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", wrap_angle(float(self.theta)))

    @property
    def point(self) -> tuple[float, float]:
        return (self.x, self.y)

    def mirrored(self) -> "Configuration":
        """Reflection across the y axis."""
        return Configuration(-self.x, self.y, math.pi - self.theta)


START = Configuration(0.0, 0.0, math.pi / 2)


@dataclass(frozen=True)
class TargetMotion:
    """Target moving from ``p0`` with constant velocity ``v`` (pursuer speed units)."""

    p0: tuple[float, float]
    v: tuple[float, float]

    def __post_init__(self):
        p0 = (float(self.p0[0]), float(self.p0[1]))
        v = (float(self.v[0]), float(self.v[1]))
        if not all(math.isfinite(c) for c in p0 + v):
            raise ValueError("target position and velocity must be finite")
        if math.hypot(*v) >= 1.0:
            raise ValueError(f"target speed {math.hypot(*v):.6g} must be < 1")
        object.__setattr__(self, "p0", p0)
        object.__setattr__(self, "v", v)

    @property
    def speed(self) -> float:
        return math.hypot(*self.v)

    def mirrored(self) -> "TargetMotion":
        return TargetMotion((-self.p0[0], self.p0[1]), (-self.v[0], self.v[1]))


def target_position(m: TargetMotion, t: float) -> tuple[float, float]:
    if t < 0:
        raise ValueError("time must be nonnegative")
    return (m.p0[0] + m.v[0] * t, m.p0[1] + m.v[1] * t)


@dataclass(frozen=True)
class Segment:
    kind: str
    magnitude: float

    def __post_init__(self):
        if self.kind not in _TURN:
            raise ValueError(f"unknown segment kind {self.kind!r}")
        if not self.magnitude >= 0.0:
            raise ValueError("segment magnitude must be nonnegative")
        if self.kind != LINE and self.magnitude > TWO_PI + ANGLE_TOL:
            raise ValueError("arc longer than a full turn")

    def length(self, rho: float) -> float:
        return self.magnitude if self.kind == LINE else rho * self.magnitude


@dataclass(frozen=True)
class DubinsPath:
    """At most two segments from ``start``; zero segments are dropped and
    equal neighbours merged on construction."""

    start: Configuration
    segments: tuple[Segment, ...]
    rho: float = 1.0

    def __post_init__(self):
        if not self.rho > 0:
            raise ValueError("turning radius must be positive")
        merged: list[Segment] = []
        for seg in self.segments:
            scale = 1.0 if seg.kind != LINE else self.rho
            if seg.magnitude <= ZERO_SEGMENT * scale:
                continue
            if merged and merged[-1].kind == seg.kind:
                seg = Segment(seg.kind, merged.pop().magnitude + seg.magnitude)
            merged.append(seg)
        if len(merged) > 2:
            raise ValueError("at most two segments are supported")
        object.__setattr__(self, "segments", tuple(merged))

    @property
    def length(self) -> float:
        return float(sum(s.length(self.rho) for s in self.segments))

    @property
    def word(self) -> str:
        """Segment kinds as a string, e.g. ``"RS"``; ``""`` for the null path."""
        return "".join(s.kind for s in self.segments)

    def mirrored(self) -> "DubinsPath":
        segs = tuple(Segment(_MIRROR_KIND[s.kind], s.magnitude) for s in self.segments)
        return DubinsPath(self.start.mirrored(), segs, self.rho)


def _advance(x, y, theta, kind, s, rho):
    """Pose after travelling arc length ``s`` along one segment kind.

    Works elementwise on arrays of ``s``.
    """
    if kind == LINE:
        return x + s * np.cos(theta), y + s * np.sin(theta), theta + 0.0 * s
    k = _TURN[kind]
    th = theta + k * s / rho
    # circle centre sits at distance rho on the turning side
    cx = x - k * rho * math.sin(theta)
    cy = y + k * rho * math.cos(theta)
    return cx + k * rho * np.sin(th), cy - k * rho * np.cos(th), th


def terminal(path: DubinsPath) -> Configuration:
    x, y, th = path.start.x, path.start.y, path.start.theta
    for seg in path.segments:
        x, y, th = _advance(x, y, th, seg.kind, seg.length(path.rho), path.rho)
        x, y, th = float(x), float(y), float(th)
    return Configuration(x, y, th)


def rollout(path: DubinsPath, dt: float | None = None):
    """Exact terminal pose plus a uniformly time-sampled trajectory.

    Returns ``(Configuration, traj)`` where ``traj`` has columns
    ``t, x, y, theta, u`` (theta unwrapped, u in {-1, 0, 1}). The last row is
    the terminal pose at ``t = path.length``.
    """
    rho = path.rho
    if dt is None:
        dt = rho / 100.0
    if not dt > 0:
        raise ValueError("sample step must be positive")
    total = path.length
    n = max(int(math.ceil(total / dt)), 1) + 1
    ts = np.linspace(0.0, total, n)
    out = np.empty((n, 5))
    out[:, 0] = ts
    x, y, th = path.start.x, path.start.y, path.start.theta
    t0 = 0.0
    for i, seg in enumerate(path.segments):
        seg_len = seg.length(rho)
        last = i == len(path.segments) - 1
        mask = (ts >= t0) & ((ts <= t0 + seg_len) if last else (ts < t0 + seg_len))
        px, py, pth = _advance(x, y, th, seg.kind, ts[mask] - t0, rho)
        out[mask, 1], out[mask, 2], out[mask, 3] = px, py, pth
        out[mask, 4] = _TURN[seg.kind]
        x, y, th = (float(v) for v in _advance(x, y, th, seg.kind, seg_len, rho))
        t0 += seg_len
    if not path.segments:
        out[:, 1:4] = (x, y, th)
        out[:, 4] = 0.0
    end = terminal(path)
    # pin the final sample to the closed form
    out[-1, 1], out[-1, 2] = end.x, end.y
    return end, out


@dataclass(frozen=True)
class Frame:
    """Rigid transform plus time scaling into the normalized frame.

    A pursuer at ``start`` with speed ``speed`` is mapped to ``START`` with
    unit speed; times in the normalized frame are distances travelled.
    ``start`` may also be a plain ``(x, y, theta)`` tuple.
    """

    start: Configuration = field(default_factory=lambda: START)
    speed: float = 1.0

    def __post_init__(self):
        if not self.speed > 0:
            raise ValueError("pursuer speed must be positive")
        if not isinstance(self.start, Configuration):
            object.__setattr__(self, "start", Configuration(*self.start))

    @property
    def _rot(self) -> float:
        return math.pi / 2 - self.start.theta

    def point_to_local(self, p):
        c, s = math.cos(self._rot), math.sin(self._rot)
        dx, dy = p[0] - self.start.x, p[1] - self.start.y
        return (c * dx - s * dy, s * dx + c * dy)

    def point_to_world(self, p):
        c, s = math.cos(-self._rot), math.sin(-self._rot)
        return (self.start.x + c * p[0] - s * p[1], self.start.y + s * p[0] + c * p[1])

    def vector_to_local(self, v):
        c, s = math.cos(self._rot), math.sin(self._rot)
        return ((c * v[0] - s * v[1]) / self.speed, (s * v[0] + c * v[1]) / self.speed)

    def target_to_local(self, p0, v) -> TargetMotion:
        return TargetMotion(self.point_to_local(p0), self.vector_to_local(v))

    def time_to_world(self, t: float) -> float:
        return t / self.speed

    def path_to_world(self, path: DubinsPath) -> DubinsPath:
        return DubinsPath(self.start, path.segments, path.rho)
