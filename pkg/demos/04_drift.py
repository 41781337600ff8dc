"""Shortest time to a fixed point while a steady drift pushes the vehicle.

In the air frame the goal moves with -wind, so this is an intercept of a
constant-velocity target. The ground track adds wind * t back in.

Run:  python3 demos/04_drift.py
"""

import math

from dubins_intercept import solve_drift

goal = (4.0, 3.0)
for wind in [(0.0, 0.0), (0.3, 0.0), (-0.3, 0.0), (0.0, -0.5)]:
    d = solve_drift(goal, wind, dt=0.01)
    t, x, y = d.ground_track[-1, :3]
    miss = math.hypot(x - goal[0], y - goal[1])
    print(f"wind {wind!s:12s} t={d.t_m:8.4f} word={d.solution.candidate.word:5s} ground miss={miss:.1e}")
