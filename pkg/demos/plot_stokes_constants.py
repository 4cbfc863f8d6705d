"""
Exact Stokes constants approach i
=================================

For the harmonic oscillator and the Budden problem the Stokes constant is
known in closed form.  As the two singular points separate it tends to the
isolated-zero value ``2i cos(pi/3) = i``.
"""

import numpy as np

from phaseint.stokes_exact import gap_sweep

##############################################################################
# The Weber constant has removable points at odd energies, exactly where the
# oscillator has its eigenvalues.  The evaluation there takes the limit.

for sample in gap_sweep("weber", [0.5, 1.0, 2.0, 3.0, 5.0, 10.0, 20.0]):
    print(f"E = {sample.parameter:5.1f}  S = {sample.s.real:+.6f}{sample.s.imag:+.6f}i  |S - i| = {sample.gap:.3e}")

##############################################################################
# The Budden constant keeps ``|S| = 1 - exp(-pi c)`` exactly; only its phase
# carries the approach to i.

for sample in gap_sweep("budden", np.geomspace(0.1, 20, 8)):
    print(f"c = {sample.parameter:6.3f}  |S| = {abs(sample.s):.12f}  |S - i| = {sample.gap:.3e}")
