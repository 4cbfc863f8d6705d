"""The five problem families: Q(z, E), turning points, action law, connection factors.

Vertex labels follow the continuation diagrams the connection factors were
derived on:

* weber     1 = +sqrt(E), 2 = -sqrt(E)
* budden    0 = pole at the origin, 1 = zero at -c (parameter slot carries c)
* quartic   Z_k = E^(1/4) i^(k-1), k = 1..4 (counterclockwise from +x)
* sextic    Z_k = E^(1/6) exp(i (k-1) pi/3), k = 1..6
* pt_cubic  1 = E^(1/3) e^(-5i pi/6) (left), 2 = E^(1/3) i (upper),
            3 = E^(1/3) e^(-i pi/6) (right)

In every bound-state family the sheet of sqrt(Q) used for the factors is the
one continued from sqrt(Q(0)) = -sqrt(E) inside the disk spanned by the zeros,
with cuts running radially outward; on it the solution anchored at the
right-hand turning point decays along +x.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .errors import MissingFactor, NotApplicable, PoleAtOrigin, UnknownVertex
from .numerics import quad_adaptive

SQRT3 = math.sqrt(3.0)


class Family(str, Enum):
    WEBER = "weber"
    BUDDEN = "budden"
    QUARTIC = "quartic"
    SEXTIC = "sextic"
    PT_CUBIC = "pt_cubic"

    def __str__(self):
        return self.value


def as_family(family) -> Family:
    try:
        return Family(str(family).lower())
    except ValueError:
        raise NotApplicable(f"unknown potential family {family!r}") from None


@dataclass(frozen=True)
class ConnectionFactor:
    """Closed form of ``[from, to] = exp(i * integral of sqrt(Q) from Z_from to Z_to)``."""

    from_vertex: int
    to_vertex: int
    value: Callable[[float], complex]

    def reversed(self) -> "ConnectionFactor":
        fwd = self.value
        return ConnectionFactor(self.to_vertex, self.from_vertex, lambda w: 1.0 / fwd(w))


@dataclass(frozen=True)
class PotentialFamily:
    kind: Family
    q: Callable[[complex, float], complex]
    action_constant: float
    action_exponent: float
    # unit-scale zeros keyed by vertex id, multiplied by param**zero_scale
    turning_point_layout: dict
    zero_scale: float
    has_bound_states: bool
    poles: dict = field(default_factory=dict)
    factors: tuple = ()
    degree: int = 0


def _action_constants():
    """Recompute the unit-energy action integrals and check them against the printed digits."""
    quartic = quad_adaptive(lambda u: math.sqrt(1.0 - u**4), -1.0, 1.0).value.real
    sextic = quad_adaptive(lambda u: math.sqrt(1.0 - u**6), -1.0, 1.0).value.real
    # the printed cubic constant is the symmetric integral of sqrt(1 - |u|^3)
    cubic = quad_adaptive(lambda u: math.sqrt(1.0 - abs(u) ** 3), -1.0, 1.0).value.real
    for got, printed, digits in ((quartic, 1.74804, 5), (sextic, 1.821488, 6), (cubic, 1.68262, 5)):
        if round(got, digits) != printed:
            raise RuntimeError(f"action constant {got!r} does not reproduce {printed}")
    return quartic, sextic, cubic


QUARTIC_INTEGRAL, SEXTIC_INTEGRAL, CUBIC_INTEGRAL = _action_constants()


def _q_budden(z, c):
    if z == 0:
        raise PoleAtOrigin("Q = 1 + c/z has a pole at z = 0")
    return 1.0 + c / z


_REGISTRY = {
    Family.WEBER: PotentialFamily(
        kind=Family.WEBER,
        q=lambda z, e: e - z * z,
        action_constant=math.pi / 2.0,
        action_exponent=1.0,
        turning_point_layout={1: 1.0 + 0j, 2: -1.0 + 0j},
        zero_scale=0.5,
        has_bound_states=True,
        factors=(ConnectionFactor(1, 2, lambda w: cmath.exp(1j * w)),),
        degree=2,
    ),
    Family.BUDDEN: PotentialFamily(
        kind=Family.BUDDEN,
        q=_q_budden,
        action_constant=math.nan,
        action_exponent=math.nan,
        turning_point_layout={1: -1.0 + 0j},
        zero_scale=1.0,
        has_bound_states=False,
        poles={0: 0j},
        # the parameter slot holds c for this family
        factors=(ConnectionFactor(0, 1, lambda c: complex(math.exp(math.pi * c / 2.0))),),
    ),
    Family.QUARTIC: PotentialFamily(
        kind=Family.QUARTIC,
        q=lambda z, e: e - z**4,
        action_constant=QUARTIC_INTEGRAL,
        action_exponent=0.75,
        turning_point_layout={k + 1: 1j**k for k in range(4)},
        zero_scale=0.25,
        has_bound_states=True,
        factors=(
            ConnectionFactor(1, 2, lambda w: cmath.exp(w / 2 + 0.5j * w)),
            ConnectionFactor(1, 3, lambda w: cmath.exp(1j * w)),
            ConnectionFactor(2, 3, lambda w: cmath.exp(-w / 2 + 0.5j * w)),
        ),
        degree=4,
    ),
    Family.SEXTIC: PotentialFamily(
        kind=Family.SEXTIC,
        q=lambda z, e: e - z**6,
        action_constant=SEXTIC_INTEGRAL,
        action_exponent=2.0 / 3.0,
        turning_point_layout={k + 1: cmath.exp(1j * k * math.pi / 3) for k in range(6)},
        zero_scale=1.0 / 6.0,
        has_bound_states=True,
        factors=(
            ConnectionFactor(1, 2, lambda w: cmath.exp(SQRT3 * w / 4 + 0.25j * w)),
            ConnectionFactor(3, 2, lambda w: cmath.exp(-0.5j * w)),
            ConnectionFactor(3, 4, lambda w: cmath.exp(-SQRT3 * w / 4 + 0.25j * w)),
        ),
        degree=6,
    ),
    Family.PT_CUBIC: PotentialFamily(
        kind=Family.PT_CUBIC,
        q=lambda z, e: e + (1j * z) ** 3,
        action_constant=math.cos(math.pi / 6) * CUBIC_INTEGRAL,
        action_exponent=5.0 / 6.0,
        turning_point_layout={
            1: cmath.exp(-5j * math.pi / 6),
            2: 1j,
            3: cmath.exp(-1j * math.pi / 6),
        },
        zero_scale=1.0 / 3.0,
        has_bound_states=True,
        factors=(
            ConnectionFactor(1, 2, lambda w: cmath.exp(SQRT3 * w / 2 - 0.5j * w)),
            ConnectionFactor(1, 3, lambda w: cmath.exp(-1j * w)),
            ConnectionFactor(2, 3, lambda w: cmath.exp(-SQRT3 * w / 2 - 0.5j * w)),
        ),
        degree=3,
    ),
}


def get_family(family) -> PotentialFamily:
    return _REGISTRY[as_family(family)]


def families():
    return list(_REGISTRY)


def bound_state_families():
    return [f for f, p in _REGISTRY.items() if p.has_bound_states]


def q_eval(family, z: complex, param: float) -> complex:
    return complex(get_family(family).q(complex(z), param))


def turning_points(family, param: float) -> dict:
    """Zeros of Q keyed by vertex id."""
    fam = get_family(family)
    scale = param**fam.zero_scale
    return {k: scale * v for k, v in fam.turning_point_layout.items()}


def singular_points(family, param: float) -> dict:
    """Zeros and poles of Q keyed by vertex id."""
    pts = dict(get_family(family).poles)
    pts.update(turning_points(family, param))
    return dict(sorted(pts.items()))


def _require_bound(fam: PotentialFamily):
    if not fam.has_bound_states:
        raise NotApplicable(f"{fam.kind} has no bound states")


def action(family, param: float) -> float:
    """Phase integral between the real turning points, ``W(E) = c * E**p``."""
    fam = get_family(family)
    _require_bound(fam)
    if param <= 0:
        raise ValueError("energy must be positive")
    return fam.action_constant * param**fam.action_exponent


def action_inverse(family, w: float) -> float:
    fam = get_family(family)
    _require_bound(fam)
    if w <= 0:
        raise ValueError("action must be positive")
    return (w / fam.action_constant) ** (1.0 / fam.action_exponent)


def potential_profile(family, param: float, xs) -> list:
    """Real-axis potential ``V(x)`` for plotting, as ``(x, V)`` pairs.

    For the PT cubic the profile is the one along the rays of subdominance
    below the real axis, ``|x|^3 (sqrt(3) - 1/3) - E``.
    """
    fam = get_family(family)
    _require_bound(fam)
    x = np.asarray(xs, dtype=float)
    if not np.all(np.isfinite(x)):
        raise ValueError("profile abscissae must be finite")
    if fam.kind is Family.PT_CUBIC:
        v = np.abs(x) ** 3 * (SQRT3 - 1.0 / 3.0) - param
    else:
        v = x**fam.degree - param
    return list(zip(x.tolist(), v.tolist()))


def connection_factor(family, from_vertex: int, to_vertex: int, w: float) -> complex:
    """``[from, to]`` at action ``w`` (``c`` for Budden); reversed pairs are reciprocals."""
    fam = get_family(family)
    known = set(fam.turning_point_layout) | set(fam.poles)
    for v in (from_vertex, to_vertex):
        if v not in known:
            raise UnknownVertex(f"{fam.kind} has no vertex {v}")
    if from_vertex == to_vertex:
        return 1.0 + 0j
    for cf in fam.factors:
        if (cf.from_vertex, cf.to_vertex) == (from_vertex, to_vertex):
            return complex(cf.value(w))
        if (cf.to_vertex, cf.from_vertex) == (from_vertex, to_vertex):
            return complex(cf.reversed().value(w))
    raise MissingFactor(f"no closed form for [{from_vertex},{to_vertex}] in {fam.kind}")


def connection_factors(family, w: float) -> dict:
    """All closed-form factors and their reversals at ``w``, keyed by ``(from, to)``."""
    fam = get_family(family)
    out = {}
    for cf in fam.factors:
        out[(cf.from_vertex, cf.to_vertex)] = complex(cf.value(w))
        out[(cf.to_vertex, cf.from_vertex)] = complex(cf.reversed().value(w))
    return out
