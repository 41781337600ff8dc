"""All zeros of a smooth function on an interval.

If the critical points of G on [a, b] are known, G is monotone between
neighbouring critical points, so each such piece holds at most one zero and
a plain bisection finds it. :func:`all_zeros` runs that sweep;
:func:`derivative_chain_zeros` repeats it down a chain of derivatives so
that only the last derivative needs an analytic critical-point set (for the
trig forms used here, a quartic in tan(x/2), see :func:`quartic_real_roots`).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

VALUE_TOL = 1e-10
TIME_TOL = 1e-12
MERGE_TOL = 1e-10


@dataclass(frozen=True)
class SmoothFn:
    """A scalar function with its domain ``[a, b]``.

    ``vec`` is an optional array version used for dense sampling.
    """

    f: Callable[[float], float]
    a: float
    b: float
    vec: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if not self.b >= self.a:
            raise ValueError("empty domain")

    def __call__(self, t: float) -> float:
        return self.f(t)

    def sample(self, ts: np.ndarray) -> np.ndarray:
        if self.vec is not None:
            return np.asarray(self.vec(ts), dtype=float)
        return np.array([self.f(float(t)) for t in ts])


@dataclass(frozen=True)
class ZeroSet:
    zeros: tuple[float, ...]
    critical_points: tuple[float, ...]

    def __iter__(self):
        return iter(self.zeros)

    def __len__(self):
        return len(self.zeros)


def bisect(f: SmoothFn, lo: float, hi: float, flo: float | None = None, fhi: float | None = None) -> float:
    """Zero of ``f`` inside a sign-changing bracket ``[lo, hi]``.

    ``flo`` / ``fhi`` override the endpoint values (e.g. one-sided limits).
    """
    flo = f(lo) if flo is None else flo
    fhi = f(hi) if fhi is None else fhi
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0 or math.isnan(flo * fhi):
        raise ValueError(f"[{lo}, {hi}] does not bracket a zero")
    tol = TIME_TOL * max(f.b - f.a, abs(hi - lo))
    neg_lo = flo < 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == neg_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _merge(zeros: Sequence[float], gap: float) -> list[float]:
    out: list[float] = []
    for z in sorted(zeros):
        if out and z - out[-1] <= gap:
            continue
        out.append(z)
    return out


def all_zeros(f: SmoothFn, critical_points: Sequence[float]) -> ZeroSet:
    """Every zero of ``f`` on its domain, given all zeros of ``f'`` there.

    Extra scaffold points are harmless; missing ones are not.
    """
    a, b = f.a, f.b
    inner = sorted({float(t) for t in critical_points if a < t < b})
    ts = [a] + inner + [b]
    vals = [f(t) for t in ts]
    scale = max(1.0, max(abs(v) for v in vals))
    tol = VALUE_TOL * scale
    n = len(ts)
    # strict sign change, even against a tiny nonzero value
    change = [vals[i] * vals[i + 1] < 0 for i in range(n - 1)]
    zeros = []
    for i in range(n):
        # a near-zero scaffold point is a (tangential) zero only when no
        # neighbouring piece already crosses
        crosses = (i > 0 and change[i - 1]) or (i < n - 1 and change[i])
        if abs(vals[i]) <= tol and not crosses:
            zeros.append(ts[i])
        if i < n - 1 and change[i]:
            zeros.append(bisect(f, ts[i], ts[i + 1], vals[i], vals[i + 1]))
    return ZeroSet(tuple(_merge(zeros, MERGE_TOL * (b - a))), tuple(ts))


def derivative_chain_zeros(chain: Sequence[SmoothFn], base_critical_points: Sequence[float]) -> ZeroSet:
    """Zeros of ``chain[0]`` where ``chain[k+1]`` is the derivative of ``chain[k]``.

    ``base_critical_points`` must hold every zero of the last element's
    derivative (or any scaffold on which the last element is piecewise
    monotone).
    """
    if not chain:
        raise ValueError("empty derivative chain")
    scaffold: Sequence[float] = base_critical_points
    zs = None
    for fn in reversed(chain):
        zs = all_zeros(fn, scaffold)
        scaffold = zs.zeros
    return zs


# --- polynomials -----------------------------------------------------------


def _quadratic(a: float, b: float, c: float) -> list[complex]:
    if a == 0.0:
        return [] if b == 0.0 else [complex(-c / b)]
    disc = b * b - 4 * a * c
    if disc >= 0:
        # avoid cancellation in the smaller root
        q = -0.5 * (b + math.copysign(math.sqrt(disc), b))
        r1 = q / a
        r2 = c / q if q != 0 else r1
        return [complex(r1), complex(r2)]
    sq = cmath.sqrt(disc)
    return [(-b + sq) / (2 * a), (-b - sq) / (2 * a)]


def _cubic(a: float, b: float, c: float, d: float) -> list[complex]:
    if a == 0.0:
        return _quadratic(b, c, d)
    b, c, d = b / a, c / a, d / a
    # t^3 + p t + q with x = t - b/3
    p = c - b * b / 3
    q = 2 * b ** 3 / 27 - b * c / 3 + d
    shift = -b / 3
    if p == 0.0:
        t = -math.copysign(abs(q) ** (1 / 3), q)
        w = complex(-0.5, math.sqrt(3) / 2)
        return [t + shift, t * w + shift, t * w.conjugate() + shift]
    disc = (q / 2) ** 2 + (p / 3) ** 3
    if disc <= 0:
        r = 2 * math.sqrt(-p / 3)
        arg = max(-1.0, min(1.0, 3 * q / (p * r)))
        phi = math.acos(arg) / 3
        return [complex(r * math.cos(phi - 2 * math.pi * k / 3) + shift) for k in range(3)]
    sq = math.sqrt(disc)
    u = -q / 2 + math.copysign(sq, -q / 2)
    u = math.copysign(abs(u) ** (1 / 3), u)
    v = -p / (3 * u)
    t1 = u + v
    re = -(u + v) / 2
    im = math.sqrt(3) / 2 * (u - v)
    return [complex(t1 + shift), complex(re + shift, im), complex(re + shift, -im)]


def _horner(coeffs: Sequence[float], x: float) -> tuple[float, float]:
    """Polynomial value and derivative at ``x``."""
    p, dp = 0.0, 0.0
    for c in coeffs:
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _polish(coeffs: Sequence[float], x: float, iters: int = 8) -> float:
    """Newton steps on a real root estimate; keeps the best residual seen."""
    p, d = _horner(coeffs, x)
    best, best_r = x, abs(p)
    for _ in range(iters):
        if d == 0.0:
            break
        step = p / d
        x = x - step
        p, d = _horner(coeffs, x)
        if abs(p) < best_r:
            best, best_r = x, abs(p)
        if abs(step) <= 1e-16 * max(1.0, abs(x)):
            break
    return float(best)


def quartic_roots(c4, c3, c2, c1, c0) -> list[complex]:
    """All roots of a polynomial of degree <= 4 by radicals, complex included."""
    cs = [float(c) for c in (c4, c3, c2, c1, c0)]
    m = max(abs(c) for c in cs)
    if m == 0.0:
        raise ValueError("all-zero polynomial")
    cs = [c / m for c in cs]
    while cs and abs(cs[0]) <= 1e-14:
        cs.pop(0)
    deg = len(cs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [complex(-cs[1] / cs[0])]
    if deg == 2:
        return _quadratic(*cs)
    if deg == 3:
        return _cubic(*cs)
    a, b, c, d = (x / cs[0] for x in cs[1:])
    p = b - 3 * a * a / 8
    q = c - a * b / 2 + a ** 3 / 8
    r = d - a * c / 4 + a * a * b / 16 - 3 * a ** 4 / 256
    shift = -a / 4
    ys: list[complex] = []
    if abs(q) <= 1e-14 * max(1.0, abs(p), abs(r)):
        for z in _quadratic(1.0, p, r):
            w = cmath.sqrt(z)
            ys += [w, -w]
    else:
        res = [1.0, p, p * p / 4 - r, -q * q / 8]
        cand = [z.real for z in _cubic(*res) if abs(z.imag) <= 1e-9 * max(1.0, abs(z))]
        mr = _polish(res, max(cand))
        if mr <= 0:
            mr = max(cand)
        sigma = math.sqrt(2 * mr)
        ys += _quadratic(1.0, sigma, p / 2 + mr - q / (2 * sigma))
        ys += _quadratic(1.0, -sigma, p / 2 + mr + q / (2 * sigma))
    return [y + shift for y in ys]


def quartic_real_roots(c4, c3, c2, c1, c0, imag_tol: float = 1e-8) -> list[float]:
    """Sorted distinct real roots of ``c4 x^4 + ... + c0``.

    Roots are polished by Newton iteration on the original coefficients;
    repeated roots are reported once. Raises ValueError for the zero
    polynomial.
    """
    coeffs = [float(c) for c in (c4, c3, c2, c1, c0)]
    roots = quartic_roots(*coeffs)
    real = [
        _polish(coeffs, z.real)
        for z in roots
        if abs(z.imag) <= imag_tol * max(1.0, abs(z))
    ]
    return _collapse(real)


def _collapse(xs: list[float]) -> list[float]:
    out: list[float] = []
    for x in sorted(xs):
        if out and abs(x - out[-1]) <= 1e-7 * max(1.0, abs(x)):
            continue
        out.append(x)
    return out
