"""Four reference instances and the families they end in.

Each row compares the closed-form solver with the grid-scan oracle.
Case C is reported as computed; see README for why it differs from the
value quoted alongside it.

Run:  python3 demos/02_reference_cases.py
"""

import math

from dubins_intercept import TargetMotion, classify_region, solve_mtip
from dubins_intercept.oracle import mtip_oracle

SQ3 = math.sqrt(3.0)
cases = {
    "A": (TargetMotion((5.0, 2.0), (0.55, -0.55)), 18.4491),
    "B": (TargetMotion((1.2, 0.0), (-0.1, -0.1)), 5.4312),
    "C": (TargetMotion((-3.0, 0.8), (0.15, 0.0)), 3.15),
    "D": (TargetMotion((-(SQ3 + 1) / 2, SQ3 / 2), (SQ3 / (4 * math.pi), 0.0)), 2 * math.pi),
}

print(f"{'case':4s} {'t_m':>10s} {'oracle':>10s} {'quoted':>8s} {'family':>8s} {'region':>6s}")
for name, (m, quoted) in cases.items():
    sol = solve_mtip(m)
    ref = mtip_oracle(m)
    region = classify_region(sol.intercept_point).tag
    print(f"{name:4s} {sol.t_m:10.6f} {ref:10.6f} {quoted:8.4f} {sol.family:>8s} {region:>6s}")
