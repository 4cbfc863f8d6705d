"""Continuation rules for WKB expressions, and the per-family itineraries.

A WKB term is ``coeff * (a, z)`` or ``coeff * (z, a)``: the solution
``Q^{-1/4} exp(+-i int_a^z sqrt(Q))`` anchored at vertex ``a``, tagged
dominant or subdominant.  The four rules:

``cross_stokes``
    a dominant term at the vertex feeds ``s`` times its coefficient into the
    opposite-orientation subdominant term there.
``cross_cut``
    ``(a, z) -> -i (z, a)`` and ``(z, a) -> -i (a, z)``; dominance kept.
``cross_anti_stokes``
    every term swaps dominant and subdominant.
``reconnect``
    ``(a, z) = [a, b] (b, z)`` and ``(z, a) = (z, b) [b, a]``.

Itineraries are plain text, one step per line::

    start 1 from s      # optional: anchor, from|to, d|s (default 1 from s)
    anti
    stokes 1
    reconnect 1 2
    cut 2
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources

from .errors import ItineraryError, NotApplicable, UnknownVertex
from .potentials import SQRT3, Family, as_family, connection_factor, get_family

__all__ = [
    "Orientation",
    "Dominance",
    "WkbTerm",
    "WkbExpression",
    "Step",
    "Itinerary",
    "cross_stokes",
    "cross_cut",
    "cross_anti_stokes",
    "reconnect",
    "parse_itinerary",
    "serialize_itinerary",
    "builtin_itinerary",
    "run_itinerary",
    "itinerary_trace",
    "quantization_residuals",
    "monodromy_coefficients",
    "terminal_coefficients",
]


class Orientation(str, Enum):
    FROM = "from"  # (a, z)
    TO = "to"  # (z, a)

    def flipped(self):
        return Orientation.TO if self is Orientation.FROM else Orientation.FROM


class Dominance(str, Enum):
    DOMINANT = "d"
    SUBDOMINANT = "s"

    def flipped(self):
        return Dominance.SUBDOMINANT if self is Dominance.DOMINANT else Dominance.DOMINANT


@dataclass(frozen=True)
class WkbTerm:
    coeff: complex
    anchor: int
    orientation: Orientation
    dominance: Dominance

    def __str__(self):
        sym = f"({self.anchor},z)" if self.orientation is Orientation.FROM else f"(z,{self.anchor})"
        return f"({self.coeff.real:.10g}{self.coeff.imag:+.10g}i){sym}_{self.dominance.value}"


@dataclass(frozen=True)
class WkbExpression:
    """Linear combination of WKB terms, at most one per ``(anchor, orientation)``."""

    terms: tuple = ()

    @classmethod
    def single(cls, anchor, orientation=Orientation.FROM, dominance=Dominance.SUBDOMINANT, coeff=1.0):
        return cls((WkbTerm(complex(coeff), int(anchor), Orientation(orientation), Dominance(dominance)),))

    @classmethod
    def from_terms(cls, terms):
        merged: dict = {}
        for t in terms:
            key = (t.anchor, t.orientation)
            if key in merged:
                old = merged[key]
                if old.dominance is not t.dominance:
                    raise ItineraryError(
                        f"term {key} is both dominant and subdominant; the step sequence is inconsistent"
                    )
                merged[key] = WkbTerm(old.coeff + t.coeff, t.anchor, t.orientation, t.dominance)
            else:
                merged[key] = WkbTerm(complex(t.coeff), t.anchor, t.orientation, t.dominance)
        ordered = sorted(merged.values(), key=lambda t: (t.anchor, t.orientation.value))
        return cls(tuple(ordered))

    def term(self, anchor, orientation):
        for t in self.terms:
            if t.anchor == anchor and t.orientation is Orientation(orientation):
                return t
        return None

    def coefficient(self, anchor, orientation) -> complex:
        t = self.term(anchor, orientation)
        return 0j if t is None else t.coeff

    def scaled(self, alpha):
        return WkbExpression(tuple(WkbTerm(alpha * t.coeff, t.anchor, t.orientation, t.dominance) for t in self.terms))

    def __str__(self):
        return " + ".join(str(t) for t in self.terms) if self.terms else "0"

    def to_dict(self):
        return {
            "terms": [
                {
                    "anchor": t.anchor,
                    "orientation": t.orientation.value,
                    "dominance": "dominant" if t.dominance is Dominance.DOMINANT else "subdominant",
                    "re": t.coeff.real,
                    "im": t.coeff.imag,
                }
                for t in self.terms
            ]
        }


def _check_vertex(vertex, family):
    if family is None:
        return
    fam = get_family(family)
    if vertex not in fam.turning_point_layout and vertex not in fam.poles:
        raise UnknownVertex(f"{fam.kind} has no vertex {vertex}")


def cross_stokes(expr: WkbExpression, vertex: int, s: complex, family=None) -> WkbExpression:
    _check_vertex(vertex, family)
    extra = [
        WkbTerm(s * t.coeff, vertex, t.orientation.flipped(), Dominance.SUBDOMINANT)
        for t in expr.terms
        if t.anchor == vertex and t.dominance is Dominance.DOMINANT
    ]
    if not extra or s == 0:
        return expr
    return WkbExpression.from_terms(list(expr.terms) + extra)


def cross_cut(expr: WkbExpression, vertex: int, family=None) -> WkbExpression:
    _check_vertex(vertex, family)
    out = []
    for t in expr.terms:
        if t.anchor == vertex:
            out.append(WkbTerm(-1j * t.coeff, t.anchor, t.orientation.flipped(), t.dominance))
        else:
            out.append(t)
    return WkbExpression.from_terms(out)


def cross_anti_stokes(expr: WkbExpression) -> WkbExpression:
    return WkbExpression(tuple(WkbTerm(t.coeff, t.anchor, t.orientation, t.dominance.flipped()) for t in expr.terms))


def reconnect(expr: WkbExpression, from_vertex: int, to_vertex: int, factor: complex, family=None) -> WkbExpression:
    """Re-anchor terms from ``from_vertex`` to ``to_vertex``; ``factor`` is ``[from, to]``."""
    _check_vertex(from_vertex, family)
    _check_vertex(to_vertex, family)
    out = []
    for t in expr.terms:
        if t.anchor != from_vertex:
            out.append(t)
        elif t.orientation is Orientation.FROM:
            out.append(WkbTerm(t.coeff * factor, to_vertex, t.orientation, t.dominance))
        else:
            out.append(WkbTerm(t.coeff / factor, to_vertex, t.orientation, t.dominance))
    return WkbExpression.from_terms(out)


@dataclass(frozen=True)
class Step:
    kind: str  # "stokes" | "cut" | "anti" | "reconnect"
    args: tuple = ()

    def __str__(self):
        return " ".join([self.kind, *map(str, self.args)])


@dataclass(frozen=True)
class Itinerary:
    family: Family | None
    steps: tuple
    start: tuple = (1, Orientation.FROM, Dominance.SUBDOMINANT)
    comments: tuple = field(default=(), compare=False)


_ARITY = {"stokes": 1, "cut": 1, "anti": 0, "reconnect": 2}


def parse_itinerary(text: str, family=None) -> Itinerary:
    """Parse the line-oriented itinerary format; errors carry the 1-based line number."""
    fam = None if family is None else as_family(family)
    steps = []
    start = (1, Orientation.FROM, Dominance.SUBDOMINANT)
    comments = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line, _, comment = raw.partition("#")
        if comment.strip() and not line.strip():
            comments.append(comment.strip())
        words = line.split()
        if not words:
            continue
        kind, rest = words[0].lower(), words[1:]
        if kind == "start":
            if len(rest) != 3:
                raise ItineraryError("start needs: vertex from|to d|s", lineno)
            try:
                start = (int(rest[0]), Orientation(rest[1].lower()), Dominance(rest[2].lower()))
            except ValueError:
                raise ItineraryError(f"bad start line {line.strip()!r}", lineno) from None
            if steps:
                raise ItineraryError("start must precede the steps", lineno)
            continue
        if kind not in _ARITY:
            raise ItineraryError(f"unknown step {kind!r}", lineno)
        if len(rest) != _ARITY[kind]:
            raise ItineraryError(f"{kind} takes {_ARITY[kind]} vertex argument(s), got {len(rest)}", lineno)
        try:
            args = tuple(int(a) for a in rest)
        except ValueError:
            raise ItineraryError(f"vertex ids must be integers in {line.strip()!r}", lineno) from None
        if fam is not None:
            for v in args:
                try:
                    _check_vertex(v, fam)
                except UnknownVertex as exc:
                    raise ItineraryError(str(exc), lineno) from None
        steps.append(Step(kind, args))
    return Itinerary(fam, tuple(steps), start, tuple(comments))


def serialize_itinerary(itinerary: Itinerary) -> str:
    v, o, d = itinerary.start
    lines = [f"start {v} {o.value} {d.value}"]
    lines += [str(s) for s in itinerary.steps]
    return "\n".join(lines) + "\n"


def builtin_itinerary(family) -> Itinerary:
    fam = as_family(family)
    text = resources.files("phaseint").joinpath("itineraries").joinpath(f"{fam.value}.itin").read_text(encoding="utf-8")
    return parse_itinerary(text, fam)


def run_itinerary(family, param: float, s: complex, itinerary: Itinerary | None = None, start_coeff: complex = 1.0):
    """Fold the steps over ``start_coeff * (start vertex term)``.

    ``param`` is the action ``W`` for the bound-state families and ``c`` for
    Budden; it only enters through the connection factors.
    """
    return itinerary_trace(family, param, s, itinerary, start_coeff)[-1]


def itinerary_trace(family, param: float, s: complex, itinerary: Itinerary | None = None, start_coeff: complex = 1.0):
    """Every intermediate expression: element 0 is the start, element ``k`` follows step ``k``."""
    fam = as_family(family)
    if itinerary is None:
        itinerary = builtin_itinerary(fam)
    if itinerary.family is not None and itinerary.family is not fam:
        raise ItineraryError(f"itinerary is for {itinerary.family}, not {fam}")
    anchor, orient, dom = itinerary.start
    _check_vertex(anchor, fam)
    expr = WkbExpression.single(anchor, orient, dom, start_coeff)
    history = [expr]
    for step in itinerary.steps:
        if step.kind == "stokes":
            expr = cross_stokes(expr, step.args[0], s, fam)
        elif step.kind == "cut":
            expr = cross_cut(expr, step.args[0], fam)
        elif step.kind == "anti":
            expr = cross_anti_stokes(expr)
        else:
            a, b = step.args
            expr = reconnect(expr, a, b, connection_factor(fam, a, b, param), fam)
        history.append(expr)
    return history


# Terminal anchor of each built-in walk and the prefactors relating the raw
# terminal coefficients to the printed monodromy expressions.
_TERMINAL = {Family.QUARTIC: 3, Family.SEXTIC: 4, Family.PT_CUBIC: 1}


def _parity(n):
    return -1.0 if n % 2 else 1.0


def monodromy_coefficients(family, w: float, s: complex):
    """Closed-form terminal (dominant, subdominant) coefficients of the built-in walk."""
    fam = as_family(family)
    s2 = s * s
    if fam is Family.QUARTIC:
        dom = math.exp(w) * (1 + s2) + 2 * s2 * math.cos(w) + math.exp(-w) * s2
        sub = s * math.exp(-w) + s * cmath.exp(1j * w)
        return -1j * dom, -1j * sub
    if fam is Family.SEXTIC:
        c2 = math.cos(w / 2)
        g, gm = math.exp(SQRT3 * w / 2), math.exp(-SQRT3 * w / 2)
        dom = 1 + g * c2 + s2 * (g + 2 * c2 + gm) * c2
        sub = 1 + s2 * (1 + math.cos(w) + 1j * math.sin(w) + 2 * gm * c2)
        return -2 * s * dom, -sub
    if fam is Family.PT_CUBIC:
        g, gm = math.exp(SQRT3 * w), math.exp(-SQRT3 * w)
        dom = g * (1 + s2) + 2 * s2 * math.cos(w) + gm * s2
        sub = s * gm + s * cmath.exp(1j * w)
        return -1j * dom, -1j * sub
    raise NotApplicable(f"no monodromy closed form for {fam}")


def terminal_coefficients(family, w: float, s: complex, itinerary: Itinerary | None = None):
    """(dominant, subdominant) coefficients at the terminal vertex, from the engine."""
    fam = as_family(family)
    if fam not in _TERMINAL:
        raise NotApplicable(f"no terminal vertex convention for {fam}")
    expr = run_itinerary(fam, w, s, itinerary)
    v = _TERMINAL[fam]
    return expr.coefficient(v, Orientation.TO), expr.coefficient(v, Orientation.FROM)


def quantization_residuals(family, w: float, s: complex, n: int | None = None):
    """Dominant and symmetry residuals of the corrected quantization, in closed form.

    The dominant residual is the bracket that must vanish for the solution to
    decay at the far turning point.  The symmetry residual compares the
    surviving subdominant coefficient with the parity of level ``n`` (guessed
    from ``w`` when omitted); for the PT cubic it is the imaginary part that
    the reality condition sets to zero.
    """
    fam = as_family(family)
    if n is None:
        n = max(0, round(w / math.pi - 0.5))
    s2 = s * s
    if fam is Family.QUARTIC:
        dom = math.exp(w) * (1 + s2) + 2 * s2 * math.cos(w) + math.exp(-w) * s2
        sym = s * math.exp(-w) + s * cmath.exp(1j * w) + _parity(n)
        return complex(dom), complex(sym)
    if fam is Family.SEXTIC:
        c2 = math.cos(w / 2)
        g, gm = math.exp(SQRT3 * w / 2), math.exp(-SQRT3 * w / 2)
        dom = 1 + g * c2 + s2 * (g + 2 * c2 + gm) * c2
        sym = 1 + s2 * (1 + math.cos(w) + 1j * math.sin(w) + 2 * gm * c2) - _parity(n) * 1j
        return complex(dom), complex(sym)
    if fam is Family.PT_CUBIC:
        g, gm = math.exp(SQRT3 * w), math.exp(-SQRT3 * w)
        dom = g * (1 + s2) + 2 * s2 * math.cos(w) + gm * s2
        sym = (s * gm + s * cmath.exp(1j * w)).imag
        return complex(dom), complex(sym)
    raise NotApplicable(f"no quantization residuals for {fam}")
