"""Minimum-time intercept of a constant-velocity target by a Dubins vehicle."""

from .geometry import (
    START,
    Configuration,
    DubinsPath,
    Frame,
    Segment,
    TargetMotion,
    rollout,
    target_position,
    terminal,
)
from .rdp import R1, R2, R3, Region, RdpSolution, classify_region, rdp_length, rdp_lengths, solve_rdp
from .elongation import ElongationPair, elongation, elongation_lengths, feasible_length, feasible_lengths
from .rootfinding import SmoothFn, ZeroSet, all_zeros, bisect, derivative_chain_zeros, quartic_real_roots
from .mtip import (
    Candidate,
    CcCoefficients,
    CsCoefficients,
    DriftSolution,
    InterceptSolution,
    cc_coefficients,
    cs_coefficients,
    gcc_chain,
    gcs_value,
    solve_cc_family,
    solve_drift,
    solve_intercept,
    solve_mtip,
    solve_rs_family,
)

__all__ = [name for name in dir() if not name.startswith("_")]
