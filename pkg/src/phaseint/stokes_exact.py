"""Closed-form Stokes constants of the Weber and Budden equations.

Both tend to ``i`` as the turning points separate (large ``E`` or ``c``);
``gap_sweep`` produces the ``|S - i|`` curves that show it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import NotApplicable
from .numerics import gamma_complex, reciprocal_gamma, sinpi
from .potentials import Family, as_family

__all__ = ["StokesConstantSample", "weber_stokes", "budden_stokes", "gap_sweep"]

LIMIT_STEP = 1e-6
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class StokesConstantSample:
    parameter: float
    s: complex
    gap: float


def _weber_parts(e):
    """Smooth prefactor, the vanishing numerator ``1/Gamma((1-E)/2)`` and denominator ``1 + e^{i pi E}``."""
    pref = 1j * _SQRT_2PI * cmath.exp(0.5j * math.pi * e) * math.exp(0.5 * e * math.log(2.0 * math.e / e))
    num = reciprocal_gamma(0.5 * (1.0 - e))
    # 1 + e^{i pi E} = 2 e^{i pi E/2} cos(pi E/2), with exact zeros at odd E
    den = 2.0 * cmath.exp(0.5j * math.pi * e) * sinpi(0.5 * e + 0.5)
    return pref, num, den


def weber_stokes(e: float) -> complex:
    """Stokes constant of ``psi'' + (E - z^2) psi = 0``.

    At odd integer ``E`` numerator and denominator vanish together; the value
    there is the l'Hopital limit, with both derivatives taken by centered
    differences of step ``1e-6``.
    """
    e = float(e)
    if not e > 0:
        raise ValueError("E must be positive")
    pref, num, den = _weber_parts(e)
    if den != 0:
        return complex(pref * num / den)
    h = LIMIT_STEP
    _, num_p, den_p = _weber_parts(e + h)
    _, num_m, den_m = _weber_parts(e - h)
    return complex(pref * (num_p - num_m) / (den_p - den_m))


def budden_stokes(c: float) -> complex:
    """Stokes constant of ``psi'' + (1 + c/z) psi = 0``; ``|S| = 1 - e^{-pi c}``."""
    c = float(c)
    if not c > 0:
        raise ValueError("c must be positive")
    ratio = gamma_complex(complex(1.0, 0.5 * c)) * reciprocal_gamma(complex(1.0, -0.5 * c))
    phase = cmath.exp(1j * c * math.log(2.0 * math.e / c))
    return complex(ratio * phase * -math.expm1(-math.pi * c))


def gap_sweep(family, params) -> list:
    """``StokesConstantSample`` for every parameter, in input order."""
    fam = as_family(family)
    if fam is Family.WEBER:
        fn = weber_stokes
    elif fam is Family.BUDDEN:
        fn = budden_stokes
    else:
        raise NotApplicable(f"no exact Stokes constant for {fam}")
    out = []
    for p in params:
        s = fn(p)
        out.append(StokesConstantSample(float(p), s, abs(s - 1j)))
    return out
