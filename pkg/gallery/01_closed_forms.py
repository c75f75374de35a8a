"""
Closed forms and quadrature
===========================

WRJI of two exponential laws has a closed form.  Here we evaluate it on a
grid of ages, check it against adaptive quadrature and split it into the
weighted residual extropy of X plus the discrimination part.
"""

import numpy as np

from wrji.distributions import Exponential, Lindley
from wrji.measures import weighted_residual_extropy, wji, wrdj_direct, wrji

X, Y = Exponential(2.0), Exponential(5.0)
print("wji(exp(1), exp(2)) =", wji(Exponential(1.0), Exponential(2.0)).value)

# the registered closed form is -(35 t + 5)/49 for this pair
print(f"{'t':>5} {'closed':>12} {'quadrature':>12} {'-(35t+5)/49':>12}")
for t in np.linspace(0.0, 2.0, 5):
    closed = wrji(X, Y, t).value
    quad = wrji(X, Y, t, route="quadrature").value
    print(f"{t:5.2f} {closed:12.8f} {quad:12.8f} {-(35 * t + 5) / 49:12.8f}")

# decomposition: wrji = weighted residual extropy of X + wrdj
t = 0.7
parts = weighted_residual_extropy(X, t).value, wrdj_direct(X, Y, t).value
print(f"\nat t={t}: {parts[0]:.6f} + {parts[1]:.6f} = {sum(parts):.6f}; wrji = {wrji(X, Y, t).value:.6f}")

# an exponential/Lindley pair: the curve decreases with age
A, B = Exponential(1.0), Lindley(0.5)
curve = [wrji(A, B, t).value for t in np.linspace(0.0, 5.0, 11)]
print("\nexp(1) vs lindley(0.5):", np.round(curve, 4))
