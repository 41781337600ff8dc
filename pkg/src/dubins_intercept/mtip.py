"""Minimum-time intercept of a constant-velocity target by a Dubins vehicle.

The optimal path is RS, LS, LR, RL or a substring. For each family the
intercept condition collapses to one scalar equation:

* R_a S:  G_cs(a) = A1 sin a + A2 cos a + a (A3 cos a + A4 sin a) + A5 = 0
  on a in [0, 2pi]. Its zeros are found by :func:`all_zeros` with the
  critical points of G_cs / (A3 cos a + A4 sin a), which reduce to a quartic
  in tan(a/2), plus the poles of that quotient.
* L_a R_b: G_cc(eta) = quartic(eta) + B6 cos + B7 sin + eta (B8 cos + B9 sin)
  = 0 on eta = a + b in [0, 4pi]. Its fourth derivative has the G_cs shape,
  so four passes of :func:`all_zeros` recover every zero.

Mirrored families come from solving the reflected instance. Every zero is
turned back into a path, checked by rollout against the target, and the
shortest surviving candidate wins.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .elongation import elongation, elongation_lengths
from .geometry import (
    LEFT,
    LINE,
    RIGHT,
    START,
    TWO_PI,
    DubinsPath,
    Frame,
    Segment,
    TargetMotion,
    rollout,
    target_position,
    terminal,
)
from .rdp import R1, R2, R3, Region, classify_region, region_boundary_distance, solve_rdp
from .rootfinding import (
    MERGE_TOL,
    VALUE_TOL,
    SmoothFn,
    ZeroSet,
    _merge,
    all_zeros,
    bisect,
    derivative_chain_zeros,
    quartic_roots,
)

log = logging.getLogger(__name__)

EPS_V = 1e-9
ETA_MAX = 2 * TWO_PI
RESIDUAL_TOL = 1e-8
TIE_TOL = 1e-9
# near-real quartic roots still enter the scaffold; extra points cost nothing
_SCAFFOLD_IMAG = 1e-4

_FAMILY_ORDER = {"RS": 0, "LS": 1, "LR": 2, "RL": 3}
_MIRROR_FAMILY = {"LminusR": "RminusL", "LplusR": "RplusL"}


@dataclass(frozen=True)
class CsCoefficients:
    A1: float
    A2: float
    A3: float
    A4: float
    A5: float
    a1: float
    a2: float
    a3: float


@dataclass(frozen=True)
class CcCoefficients:
    B1: float
    B2: float
    B3: float
    B4: float
    B5: float
    B6: float
    B7: float
    B8: float
    B9: float
    Ca: float
    Cb: float
    Cc: float


@dataclass(frozen=True)
class Candidate:
    t: float
    family: str
    path: DubinsPath
    terminal: tuple[float, float]
    region: Region
    mirrored: bool = False

    @property
    def word(self) -> str:
        """Segment kinds of the path, e.g. ``"LR"`` for an L+R candidate."""
        return self.path.word or "Null"


@dataclass(frozen=True)
class InterceptSolution:
    t_m: float
    candidate: Candidate
    all_candidates: tuple[Candidate, ...] = ()
    verified: bool = True

    @property
    def family(self) -> str:
        return self.candidate.family

    @property
    def path(self) -> DubinsPath:
        return self.candidate.path

    @property
    def intercept_point(self) -> tuple[float, float]:
        return self.candidate.terminal


# --- coefficient assembly ---------------------------------------------------


def cs_coefficients(m: TargetMotion, rho: float = 1.0) -> CsCoefficients:
    """Coefficients of G_cs for an R_a S_d intercept.

    Assembled without dividing by v_x; the intermediates a2, a3 are NaN when
    |v_x| is below EPS_V.
    """
    x0, y0 = m.p0
    vx, vy = m.v
    a1 = rho
    if abs(vx) > EPS_V:
        a2 = x0 / vx
        a3 = -y0 + vy / vx * x0
    else:
        a2 = a3 = math.nan
    return CsCoefficients(
        A1=-y0 - rho * vx,
        A2=x0 - rho - rho * vy,
        A3=rho * vx,
        A4=-rho * vy,
        A5=rho + rho * vy - x0 * vy + y0 * vx,
        a1=a1,
        a2=a2,
        a3=a3,
    )


def gcs_value(c: CsCoefficients, alpha: float) -> float:
    sa, ca = math.sin(alpha), math.cos(alpha)
    return c.A1 * sa + c.A2 * ca + alpha * (c.A3 * ca + c.A4 * sa) + c.A5


def cc_coefficients(m: TargetMotion, rho: float = 1.0) -> CcCoefficients:
    """Coefficients of G_cc for an L_a R_b intercept with eta = a + b."""
    if m.speed <= EPS_V:
        raise ValueError("stationary target: use solve_rdp")
    x0, y0 = m.p0
    vx, vy = m.v
    ca = rho * rho * (vx * vx + vy * vy)
    cb = 2 * rho * ((rho + x0) * vx + y0 * vy)
    cc = (rho + x0) ** 2 + y0 * y0
    r2 = rho * rho
    return CcCoefficients(
        B1=ca * ca,
        B2=2 * ca * cb,
        B3=cb * cb + 2 * ca * cc - 6 * r2 * ca,
        B4=2 * cc * cb - 6 * r2 * cb,
        B5=cc * cc - 6 * r2 * cc - 3 * r2 * r2,
        B6=8 * rho ** 3 * (rho + x0),
        B7=8 * rho ** 3 * y0,
        B8=8 * rho ** 4 * vx,
        B9=8 * rho ** 4 * vy,
        Ca=ca,
        Cb=cb,
        Cc=cc,
    )


# --- trig-polynomial functions ------------------------------------------------


def _trig_poly(poly, P, Q, R, S, a, b) -> SmoothFn:
    """``poly(t) + (P + R t) cos t + (Q + S t) sin t`` on [a, b]."""
    poly = tuple(float(c) for c in poly)

    def f(t):
        acc = 0.0
        for c in poly:
            acc = acc * t + c
        return acc + (P + R * t) * math.cos(t) + (Q + S * t) * math.sin(t)

    def vec(t):
        t = np.asarray(t, dtype=float)
        return np.polyval(poly, t) + (P + R * t) * np.cos(t) + (Q + S * t) * np.sin(t)

    return SmoothFn(f, a, b, vec)


def gcs_function(c: CsCoefficients, a: float = 0.0, b: float = TWO_PI) -> SmoothFn:
    return _trig_poly((c.A5,), c.A2, c.A1, c.A3, c.A4, a, b)


def _angles_in(base: float, period: float, lo: float, hi: float) -> list[float]:
    k = math.ceil((lo - base) / period)
    out = []
    t = base + k * period
    while t <= hi:
        out.append(t)
        k += 1
        t = base + k * period
    return out


def trig_scaffold(A1, A2, A3, A4, A5, lo: float = 0.0, hi: float = TWO_PI) -> list[float]:
    """Points splitting [lo, hi] into pieces where the G_cs-shaped function
    ``A1 sin + A2 cos + t (A3 cos + A4 sin) + A5`` has at most one zero.

    These are the critical points of G / (A3 cos + A4 sin), its poles, and
    the odd multiples of pi that the tan(t/2) substitution cannot see.
    """
    scale = max(abs(A1), abs(A2), abs(A3), abs(A4), abs(A5), 1e-300)
    pts = set(_angles_in(math.pi, TWO_PI, lo, hi))
    if max(abs(A3), abs(A4)) <= 1e-14 * scale:
        # no t-term: plain sinusoid plus constant
        if max(abs(A1), abs(A2)) > 0:
            pts.update(_angles_in(math.atan2(A1, A2), math.pi, lo, hi))
        return sorted(pts)
    pts.update(_angles_in(math.atan2(-A3, A4), math.pi, lo, hi))
    k = A1 * A3 - A2 * A4
    coeffs = (
        k + A3 * A3 + A4 * A5,
        -4 * A3 * A4 + 2 * A3 * A5,
        2 * k - 2 * A3 * A3 + 4 * A4 * A4,
        4 * A3 * A4 + 2 * A3 * A5,
        k + A3 * A3 - A4 * A5,
    )
    if max(abs(c) for c in coeffs) > 0:
        for z in quartic_roots(*coeffs):
            if abs(z.imag) <= _SCAFFOLD_IMAG * max(1.0, abs(z)):
                pts.update(_angles_in(2 * math.atan(z.real), TWO_PI, lo, hi))
    return sorted(pts)


def gcs_scaffold(c: CsCoefficients, lo: float = 0.0, hi: float = TWO_PI) -> list[float]:
    return trig_scaffold(c.A1, c.A2, c.A3, c.A4, c.A5, lo, hi)


def trig_zeros(A1, A2, A3, A4, A5, lo: float = 0.0, hi: float = TWO_PI) -> ZeroSet:
    """All zeros of ``G = A1 sin + A2 cos + t (A3 cos + A4 sin) + A5`` on [lo, hi].

    G itself is not monotone between scaffold points; G / D with
    D = A3 cos + A4 sin is. Plain sign tests on G agree with G / D except
    next to a removable pole (D = 0 and G = 0 together), where the piece is
    re-examined through the one-sided limit of G / D.
    """
    f = _trig_poly((A5,), A2, A1, A3, A4, lo, hi)
    scaffold = trig_scaffold(A1, A2, A3, A4, A5, lo, hi)
    zs = all_zeros(f, scaffold)
    ts = zs.critical_points
    vals = [f(t) for t in ts]
    tol = VALUE_TOL * max(1.0, max(abs(v) for v in vals))
    dscale = max(abs(A3), abs(A4))
    if dscale == 0.0:
        return zs

    def D(t):
        return A3 * math.cos(t) + A4 * math.sin(t)

    def removable(i):
        return abs(vals[i]) <= tol and abs(D(ts[i])) <= 1e-9 * dscale

    def gbar_end(i, mid):
        t, d = ts[i], D(ts[i])
        if abs(d) > 1e-9 * dscale:
            return vals[i] / d
        if abs(vals[i]) <= tol:
            # L'Hopital on (A1 sin + A2 cos + A5) / D
            dn = A1 * math.cos(t) - A2 * math.sin(t)
            dd = -A3 * math.sin(t) + A4 * math.cos(t)
            return t + dn / dd
        return math.copysign(math.inf, vals[i] * D(mid))

    gbar = SmoothFn(lambda t: f(t) / D(t), lo, hi)
    extra = []
    for i in range(len(ts) - 1):
        if not (removable(i) or removable(i + 1)):
            continue
        mid = 0.5 * (ts[i] + ts[i + 1])
        ga, gb = gbar_end(i, mid), gbar_end(i + 1, mid)
        if ga * gb < 0:
            extra.append(bisect(gbar, ts[i], ts[i + 1], ga, gb))
    if not extra:
        return zs
    return ZeroSet(tuple(_merge(list(zs.zeros) + extra, MERGE_TOL * (hi - lo))), ts)


def gcs_zeros(c: CsCoefficients, lo: float = 0.0, hi: float = TWO_PI) -> ZeroSet:
    return trig_zeros(c.A1, c.A2, c.A3, c.A4, c.A5, lo, hi)


def gcc_chain(c: CcCoefficients, eta_max: float = ETA_MAX) -> list[SmoothFn]:
    """[G_cc, G_cc', G_cc'', G_cc''', G_cc''''] on [0, eta_max]."""
    if not eta_max > 0:
        raise ValueError("eta_max must be positive")
    poly = np.array([c.B1, c.B2, c.B3, c.B4, c.B5])
    P, Q, R, S = c.B6, c.B7, c.B8, c.B9
    chain = []
    for _ in range(5):
        chain.append(_trig_poly(poly, P, Q, R, S, 0.0, eta_max))
        poly = np.polyder(poly) if len(poly) > 1 else np.array([0.0])
        # d/dt of P cos + Q sin + t (R cos + S sin)
        P, Q, R, S = Q + R, S - P, S, -R
    return chain


def _g4_coefficients(c: CcCoefficients):
    return c.B7 + 4 * c.B8, c.B6 - 4 * c.B9, c.B8, c.B9, 24 * c.B1


def gcc_base_scaffold(c: CcCoefficients, eta_max: float = ETA_MAX) -> list[float]:
    """Scaffold for the fourth derivative, which has the G_cs shape."""
    return trig_scaffold(*_g4_coefficients(c), 0.0, eta_max)


def gcc_zeros(c: CcCoefficients, eta_max: float = ETA_MAX) -> ZeroSet:
    """Zeros of G_cc on [0, eta_max]: the fourth derivative is solved as a
    G_cs-shaped function, then three more sweeps climb the chain."""
    chain = gcc_chain(c, eta_max)
    base = trig_zeros(*_g4_coefficients(c), 0.0, eta_max)
    return derivative_chain_zeros(chain[:4], base.zeros)


# --- candidate construction ---------------------------------------------------


def _in_r3_closure(p, rho: float) -> bool:
    """R3 plus its boundary arcs on C_r, C_l and the radius-3 rho circles."""
    slack = 1e-9 * rho * rho
    dr2 = (p[0] - rho) ** 2 + p[1] ** 2
    dl2 = (p[0] + rho) ** 2 + p[1] ** 2
    return (
        p[1] > 0
        and dr2 >= rho * rho - slack
        and dl2 >= rho * rho - slack
        and dr2 <= 9 * rho * rho + slack
        and dl2 <= 9 * rho * rho + slack
    )


def _make_candidate(m: TargetMotion, rho: float, path: DubinsPath, family: str | None = None):
    """Validated candidate in the frame of ``m``, or None."""
    t = path.length
    if t <= 1e-12:
        return None
    end = terminal(path)
    goal = target_position(m, t)
    if math.hypot(end.x - goal[0], end.y - goal[1]) > RESIDUAL_TOL * rho:
        return None
    region = classify_region(goal, rho)
    if family is None:
        family = path.word
        if family == "LR" and goal[0] >= 0 and goal[1] > 0 and _in_r3_closure(goal, rho):
            l_minus, l_plus = (float(v[0]) for v in elongation_lengths([goal], rho))
            tol = 1e-6 * max(1.0, t)
            if abs(t - l_minus) <= tol:
                family = "LminusR"
            elif abs(t - l_plus) <= tol:
                family = "LplusR"
    return Candidate(t, family, path, goal, region)


def solve_rs_family(m: TargetMotion, rho: float = 1.0) -> list[Candidate]:
    """Every valid R_a S_d intercept (and its substrings R, S)."""
    c = cs_coefficients(m, rho)
    zs = gcs_zeros(c)
    x0, y0 = m.p0
    vx, vy = m.v
    out = []
    for alpha in zs:
        sa, ca = math.sin(alpha), math.cos(alpha)
        ux, uy = sa - vx, ca - vy
        X = x0 + vx * rho * alpha - rho + rho * ca
        Y = y0 + vy * rho * alpha - rho * sa
        d = (X * ux + Y * uy) / (ux * ux + uy * uy)
        if d < -RESIDUAL_TOL * rho:
            continue
        path = DubinsPath(START, (Segment(RIGHT, alpha), Segment(LINE, max(d, 0.0))), rho)
        cand = _make_candidate(m, rho, path)
        if cand is not None:
            out.append(cand)
    return out


def solve_cc_family(m: TargetMotion, rho: float = 1.0, eta_max: float = ETA_MAX) -> list[Candidate]:
    """Every valid L_a R_b intercept, labelled LR, LminusR or LplusR."""
    if m.speed <= EPS_V:
        return []
    c = cc_coefficients(m, rho)
    zs = gcc_zeros(c, eta_max)
    out = []
    for eta in zs:
        if eta <= 0:
            continue
        px, py = target_position(m, rho * eta)
        s2 = (px + rho) ** 2 + py * py
        if s2 < rho * rho * (1 - 1e-9) or s2 > 9 * rho * rho * (1 + 1e-9):
            continue
        half = math.atan2(math.sqrt(max(s2 - rho * rho, 0.0)), math.sqrt(max(9 * rho * rho - s2, 0.0)))
        for beta in (2 * half, TWO_PI - 2 * half):
            alpha = eta - beta
            if alpha < -1e-9 or alpha > TWO_PI + 1e-9:
                continue
            alpha = min(max(alpha, 0.0), TWO_PI)
            path = DubinsPath(START, (Segment(LEFT, alpha), Segment(RIGHT, beta)), rho)
            cand = _make_candidate(m, rho, path)
            if cand is not None:
                out.append(cand)
    return out


def _mirror_candidate(c: Candidate) -> Candidate:
    fam = _MIRROR_FAMILY.get(c.family) or c.family.translate(str.maketrans("LR", "RL"))
    term = (-c.terminal[0], c.terminal[1])
    rho = c.path.rho
    return Candidate(c.t, fam, c.path.mirrored(), term, classify_region(term, rho), not c.mirrored)


def _tie_key(c: Candidate):
    return (len(c.path.segments), _FAMILY_ORDER.get(c.word, -1), c.mirrored)


def _select(cands: list[Candidate]) -> Candidate:
    tmin = min(c.t for c in cands)
    ties = [c for c in cands if c.t <= tmin + TIE_TOL]
    return min(ties, key=_tie_key)


def check_solution(c: Candidate, rho: float = 1.0, tol: float = 1e-6) -> bool:
    """Structural checks on a selected intercept.

    t >= F(terminal) always; in the interior of R1 u R2 the time equals F;
    in the interior of R3 it equals one of F, L-, L+.
    """
    p = c.terminal
    F = solve_rdp(p, rho).length
    tol = tol * max(1.0, c.t)
    if c.t < F - tol:
        return False
    if region_boundary_distance(p, rho) <= 1e-9 * rho:
        return True
    if c.region.tag in (R1, R2):
        return abs(c.t - F) <= tol
    e = elongation((abs(p[0]), p[1]), rho)
    return min(abs(c.t - F), abs(c.t - e.l_minus), abs(c.t - e.l_plus)) <= tol


def _rdp_solution(m: TargetMotion, rho: float) -> InterceptSolution:
    sol = solve_rdp(m.p0, rho)
    cand = Candidate(sol.length, sol.family, sol.path, m.p0, classify_region(m.p0, rho))
    return InterceptSolution(sol.length, cand, (cand,), True)


def solve_mtip(m: TargetMotion, rho: float = 1.0) -> InterceptSolution:
    """Minimum-time intercept in the normalized frame.

    Raises RuntimeError if no candidate survives validation, which should
    not happen for target speed < 1.
    """
    if not rho > 0:
        raise ValueError("turning radius must be positive")
    if m.speed <= EPS_V or math.hypot(*m.p0) <= 1e-12 * rho:
        return _rdp_solution(m, rho)
    cands = solve_rs_family(m, rho) + solve_cc_family(m, rho)
    mm = m.mirrored()
    cands += [_mirror_candidate(c) for c in solve_rs_family(mm, rho) + solve_cc_family(mm, rho)]
    if not cands:
        raise RuntimeError(f"no intercept candidate found for {m}")
    best = _select(cands)
    # the candidate multiset is mirror-symmetric, so its exact minimum is too
    t_m = min(c.t for c in cands)
    ok = check_solution(best, rho)
    if not ok:
        log.warning("intercept for %s failed the structural check", m)
    return InterceptSolution(t_m, best, tuple(sorted(cands, key=lambda c: c.t)), ok)


def solve_intercept(start, speed, p0, v, rho: float = 1.0) -> tuple[InterceptSolution, Frame]:
    """Intercept for an arbitrary pursuer pose and speed (world units).

    Returns the normalized-frame solution together with the frame; use
    ``frame.time_to_world`` and ``frame.point_to_world`` to map results back.
    """
    frame = Frame(start, speed)
    return solve_mtip(frame.target_to_local(p0, v), rho), frame


@dataclass(frozen=True)
class DriftSolution:
    """Shortest path to a fixed point in a constant drift field."""

    solution: InterceptSolution
    terminal: tuple[float, float]
    wind: tuple[float, float]
    ground_track: np.ndarray = field(repr=False)

    @property
    def t_m(self) -> float:
        return self.solution.t_m


def drift_ground_track(path: DubinsPath, wind, dt: float | None = None) -> np.ndarray:
    """Air-frame rollout shifted by ``wind * t``: columns t, x, y, theta, u."""
    _, traj = rollout(path, dt)
    traj[:, 1] += wind[0] * traj[:, 0]
    traj[:, 2] += wind[1] * traj[:, 0]
    return traj


def solve_drift(terminal_point, wind, rho: float = 1.0, dt: float | None = None) -> DriftSolution:
    w = (float(wind[0]), float(wind[1]))
    if math.hypot(*w) >= 1.0:
        raise ValueError("drift speed must be < 1")
    goal = (float(terminal_point[0]), float(terminal_point[1]))
    sol = solve_mtip(TargetMotion(goal, (-w[0], -w[1])), rho)
    return DriftSolution(sol, goal, w, drift_ground_track(sol.path, w, dt))
