"""
Proportional hazards pairs and bounds
=====================================

Under the PHR model the assigned survival is a power of the true one,
``Gbar = Fbar**gamma``.  A series system of ``k`` exponential components
is the case ``gamma = k``.  The bound suite evaluates every inequality
that applies to the pair and reports whether it holds.
"""

import numpy as np

from wrji.distributions import Exponential, PhrPair, Uniform, WeibullRate
from wrji.measures import bound_suite, wrji_phr_closed

theta = 0.8
print("series system, t = 1")
for k in (1, 2, 3, 6):
    v = wrji_phr_closed(Exponential(theta), k, 1.0).value
    print(f"  k={k}: {v:.6f}")

# uniform law: (gamma t + d) / (2 (gamma + 1) (t - d))
d, gamma = 2.0, 3.0
for t in (0.0, 0.5, 1.5):
    closed = wrji_phr_closed(Uniform(0.0, d), gamma, t).value
    print(f"uniform(0,{d}) gamma={gamma} t={t}: {closed:.6f} vs {(gamma * t + d) / (2 * (gamma + 1) * (t - d)):.6f}")

# which bounds apply and hold for a Weibull pair
X = WeibullRate(1.0, 1.5)
print("\nbounds for weibull(1, 1.5) and its PHR transform with gamma = 2 at t = 0.4")
for c in bound_suite(X, PhrPair(X, 2.0), 0.4):
    if c.applicable:
        print(f"  {c.name:28s} {c.kind:5s} bound {c.bound: .5f}  {c.target} {c.measure: .5f}  holds={c.holds}")
