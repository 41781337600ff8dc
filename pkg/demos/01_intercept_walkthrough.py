"""Walk through a single intercept, from the raw motion to the verified path.

Run:  python3 demos/01_intercept_walkthrough.py
"""

import math

import numpy as np

from dubins_intercept import (
    TargetMotion,
    classify_region,
    rdp_length,
    rollout,
    solve_mtip,
    target_position,
)

# The pursuer sits at the origin heading north with unit speed and unit
# turning radius. The target drifts south-east.
m = TargetMotion((5.0, 2.0), (0.55, -0.55))
print(f"target starts at {m.p0}, velocity {m.v}, speed {m.speed:.3f}")

# Head-on closing at combined speed can never beat t_m.
naive = math.hypot(*m.p0) / (1 + m.speed)
print(f"closing-speed lower bound        {naive:.4f}")

sol = solve_mtip(m)
print(f"minimum intercept time           {sol.t_m:.6f}")
print(f"path word                        {sol.candidate.word}")
print(f"intercept point                  {sol.intercept_point}")
print(f"region of the intercept point    {classify_region(sol.intercept_point).tag}")

# At t_m the path length equals the shortest path to the meeting point.
print(f"shortest path to that point      {rdp_length(sol.intercept_point):.6f}")

# Roll the path out and compare its end with where the target actually is.
end, traj = rollout(sol.path, dt=0.05)
tx, ty = target_position(m, sol.t_m)
print(f"rollout end                      ({end.x:.6f}, {end.y:.6f})")
print(f"target at t_m                    ({tx:.6f}, {ty:.6f})")
print(f"miss distance                    {math.hypot(end.x - tx, end.y - ty):.2e}")

# Candidates the solver compared before picking the earliest.
print("\ncandidates considered:")
for c in sorted(sol.all_candidates, key=lambda c: c.t):
    print(f"  {c.family:8s} {c.word:6s} t={c.t:.6f}")

# Sample a few trajectory rows (t, x, y, theta, u).
print("\nfirst trajectory samples:")
print(np.array2string(traj[:4], precision=4, suppress_small=True))
