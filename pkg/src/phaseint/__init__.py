"""Phase-integral (Stokes constant) methods for bound-state energies.

Subpackages by layer:

* :mod:`phaseint.numerics`      quadrature, complex Gamma, bracketed roots
* :mod:`phaseint.potentials`    the five families and their connection factors
* :mod:`phaseint.quantization`  WKB and first-order corrected levels
* :mod:`phaseint.stokes_exact`  Weber and Budden Stokes constants
* :mod:`phaseint.connection`    continuation rules and itineraries
* :mod:`phaseint.geometry`      Stokes / anti-Stokes line tracing
* :mod:`phaseint.oracle`        brute-force eigenvalues
"""

__version__ = "0.1.0"

from .potentials import Family, action, action_inverse, get_family, turning_points  # noqa: E402
from .quantization import level_table, pi_level, stokes_estimate, wkb_level  # noqa: E402
from .stokes_exact import budden_stokes, weber_stokes  # noqa: E402

__all__ = [
    "Family",
    "action",
    "action_inverse",
    "get_family",
    "turning_points",
    "level_table",
    "pi_level",
    "stokes_estimate",
    "wkb_level",
    "budden_stokes",
    "weber_stokes",
]
