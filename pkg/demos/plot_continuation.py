"""
Walking a solution around the turning points
============================================

The connection engine applies four local rules (Stokes line, cut,
anti-Stokes line, re-anchoring) along a scripted path.  Demanding that the
solution comes back decaying gives the quantization condition.
"""

import math

from phaseint.connection import builtin_itinerary, itinerary_trace, quantization_residuals
from phaseint.quantization import pi_action, stokes_estimate

##############################################################################
# For the oscillator, the loop returns the starting solution unchanged only
# when ``W = (n + 1/2) pi``, whatever the Stokes constant.

itin = builtin_itinerary("weber")
for w in (math.pi / 2, 2.0, 1.5 * math.pi):
    history = itinerary_trace("weber", w, 0.3 + 0.9j, itin)
    print(f"W = {w:.4f}: terminal {history[-1].to_dict()['terms']}")

##############################################################################
# For the quartic the residual of the dominant coefficient at the
# first-order solution is of order ``exp(-3 W_n)``.  Evaluated directly in
# double precision it is swamped by roundoff from ``e^W (1 + S^2)`` once
# ``n >= 3``; the rearranged form keeps every digit.

from phaseint.quantization import first_order_dominant_residual

for n in range(5):
    w = pi_action("quartic", n)
    s = stokes_estimate("quartic", n).s
    dom, _ = quantization_residuals("quartic", w, s, n)
    stable = first_order_dominant_residual(n)
    scale = math.exp(-3 * (n + 0.5) * math.pi)
    print(f"n = {n}: direct {abs(dom):.2e}  rearranged {abs(stable):.2e}  ratio to exp(-3 W_n) {abs(stable) / scale:.3f}")
