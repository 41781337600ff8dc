"""Finding every zero of a smooth function from its critical points.

The sweep needs the zeros of f' on [a, b]; between neighbours f is
monotone, so bisection per piece is enough. A chain of derivatives pushes
the need for analytic roots down to the last link.

Run:  python3 demos/03_root_finding.py
"""

import numpy as np

from dubins_intercept import SmoothFn, all_zeros, derivative_chain_zeros, quartic_real_roots

# p(x) = (x - 0.3)(x - 0.31)(x - 1.5)(x + 2): two zeros only 0.01 apart.
p = np.poly1d(np.poly([0.3, 0.31, 1.5, -2.0]))
chain = [SmoothFn(lambda x, q=q: float(q(x)), -3.0, 3.0) for q in (p, p.deriv(), p.deriv(2))]

# The last link's derivative is linear, so its only zero is known exactly.
base = p.deriv(3).roots.tolist()
print("zeros via derivative chain:", [round(z, 10) for z in derivative_chain_zeros(chain, base)])
print("numpy roots:               ", sorted(round(float(r), 10) for r in p.roots.real))

# Closed-form quartic roots give the critical points of p' directly.
print("critical points of p:      ", [round(z, 10) for z in quartic_real_roots(0.0, *p.deriv().coeffs)])

# A tangential zero: (x - 1)^2 touches zero at a critical point.
f = SmoothFn(lambda x: (x - 1.0) ** 2, 0.0, 2.0)
print("touching zero:             ", list(all_zeros(f, [1.0])))

# Without the critical point, the sweep sees no sign change and misses it.
print("scaffold missing 1.0:      ", list(all_zeros(f, [])))
