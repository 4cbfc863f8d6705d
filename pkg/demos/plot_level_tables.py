"""
Level tables for three anharmonic oscillators
=============================================

Compare Bohr-Sommerfeld energies, the first-order phase-integral
correction and a brute-force eigenvalue for ``x^4``, ``x^6`` and the
PT-symmetric ``i x^3``.
"""

##############################################################################
# The correction moves the quantized action off ``(n + 1/2) pi`` by an
# amount set by the off-axis turning points.  Its size is the ``cos(W)``
# column, which shrinks exponentially with ``n``.

from phaseint import level_table

for family in ("quartic", "sextic", "pt_cubic"):
    print(f"\n{family}")
    print(f"{'n':>2} {'E_exact':>11} {'E_wkb':>11} {'cos(W)':>13} {'E_PI':>11}")
    for row in level_table(family, 4):
        print(f"{row.n:>2} {row.e_exact:>11.6f} {row.e_wkb:>11.6f} {row.cos_w:>13.5e} {row.e_pi:>11.6f}")

##############################################################################
# The corrected levels close most of the gap for ``n = 0`` in the quartic
# and PT cases.  For the sextic the second pair of off-axis zeros enters
# with a cosine factor, so the correction changes sign from level to level.

from phaseint.quantization import pi_correction

for family in ("quartic", "sextic", "pt_cubic"):
    shifts = [pi_correction(family, n) for n in range(6)]
    print(family, " ".join(f"{s:+.2e}" for s in shifts))
