"""Stokes and anti-Stokes lines of ``psi'' + Q psi = 0`` in the complex plane.

An anti-Stokes line from a singular point ``z0`` is a curve on which
``Phi(z) = int_{z0}^z sqrt(Q) dz`` is real; on a Stokes line it is imaginary.
Lines are traced by RK4 in arc length along the unit field
``conj(w)/|w|`` (anti-Stokes) or ``i conj(w)/|w|`` (Stokes), where ``w`` is
the branch of ``sqrt(Q)`` continued from the previous point by nearest-phase
matching.  After every step ``z`` is nudged back onto the level set of
``Phi`` by one Newton correction, so the wrong part of ``Phi`` stays at
roundoff level rather than drifting.
"""

from __future__ import annotations

import cmath
import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateLeadingCoefficient, StepFailure
from .potentials import Family, as_family, get_family, singular_points

__all__ = [
    "StokesLine",
    "Diagram",
    "Problem",
    "emanation_angles",
    "family_problem",
    "polynomial_problem",
    "trace_line",
    "diagram",
    "diagram_csv",
    "diagram_svg",
]

ANTI = "anti_stokes"
STOKES = "stokes"
KINDS = (ANTI, STOKES)

# 5-point Gauss-Legendre on [0, 1] for the per-step phase integral
_GL_X, _GL_W = np.polynomial.legendre.leggauss(5)
_GL_X = (0.5 * (_GL_X + 1.0)).tolist()
_GL_W = (0.5 * _GL_W).tolist()


@dataclass(frozen=True)
class StokesLine:
    kind: str
    origin: int
    angle: float
    points: tuple
    phase_integral: tuple
    stop_reason: str = ""


@dataclass
class Diagram:
    family: str
    param: float
    vertices: dict
    lines: list
    cuts: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def count(self, kind):
        return sum(1 for ln in self.lines if ln.kind == kind)


@dataclass(frozen=True)
class Problem:
    """What the tracer needs: ``Q``, its singular points with orders, and a length scale."""

    name: str
    q: object
    points: dict  # id -> (z, order, leading coefficient)
    scale: float
    cuts: tuple = ()


def emanation_angles(coeff: complex, order: int, kind: str = ANTI) -> list:
    """Directions of the lines leaving a point where ``Q ~ coeff (z - z0)^order``.

    ``order`` is 1 (simple zero), 2 (double zero) or -1 (simple pole).  The
    increment ``coeff^(1/2) (z - z0)^((order+2)/2)`` must be real (anti-Stokes)
    or imaginary (Stokes) along the ray, which gives ``order + 2`` angles in
    ``[0, 2 pi)``, sorted.
    """
    if order not in (-1, 1, 2):
        raise ValueError(f"unsupported order {order}")
    if kind not in KINDS:
        raise ValueError(f"unknown line kind {kind!r}")
    coeff = complex(coeff)
    if coeff == 0 or not cmath.isfinite(coeff):
        raise DegenerateLeadingCoefficient("leading coefficient must be finite and nonzero")
    p = (order + 2) / 2.0
    offset = 0.0 if kind == ANTI else math.pi / 2.0
    base = -0.5 * cmath.phase(coeff)
    angles = {round(((k * math.pi + offset + base) / p) % (2 * math.pi), 14) for k in range(order + 2)}
    return sorted(a % (2 * math.pi) for a in angles)


def _leading_coefficient(q, z0, order, scale):
    # average Q / (z - z0)^order over a small circle; the O(eps) terms cancel
    eps = 1e-5 * scale
    acc = 0j
    for k in range(8):
        d = eps * cmath.exp(2j * math.pi * k / 8)
        acc += q(z0 + d) / d**order
    return acc / 8


_CUT_TABLE = {
    Family.WEBER: (),
    Family.BUDDEN: ((1, 0),),  # from the zero at -c to the pole
}


def family_problem(family, param: float) -> Problem:
    fam = as_family(family)
    reg = get_family(fam)
    if not param > 0:
        raise ValueError("param must be positive")
    pts = singular_points(fam, param)
    scale = max(abs(z) for z in pts.values())

    def q(z):
        return complex(reg.q(z, param))

    points = {}
    for vid, z in pts.items():
        order = -1 if vid in reg.poles else 1
        points[vid] = (z, order, _leading_coefficient(q, z, order, scale))
    cuts = []
    if fam is Family.BUDDEN:
        cuts.append((pts[1], pts[0]))
    elif fam is not Family.WEBER:
        # radial cuts outward from every off-axis zero
        for vid, z in pts.items():
            if abs(z.imag) > 1e-12 * scale:
                cuts.append((z, z * 6.0))
    return Problem(fam.value, q, points, scale, tuple(cuts))


def polynomial_problem(coeffs, cluster_tol: float = 1e-6, name: str = "polynomial") -> Problem:
    """Problem for ``Q(z) = sum coeffs[k] z^(n-k)`` (highest power first).

    Roots closer than ``cluster_tol`` (relative) are merged into double zeros.
    """
    c = np.asarray(coeffs, dtype=complex)
    roots = np.roots(c)
    scale = max(1.0, float(np.max(np.abs(roots)))) if len(roots) else 1.0
    groups = []
    for r in roots:
        for g in groups:
            if abs(g[0] - r) < cluster_tol * scale:
                g.append(r)
                break
        else:
            groups.append([r])
    poly = np.poly1d(c)

    def q(z):
        return complex(poly(z))

    points = {}
    for k, g in enumerate(sorted(groups, key=lambda g: (round(np.mean(g).real, 9), round(np.mean(g).imag, 9))), 1):
        z = complex(np.mean(g))
        order = len(g)
        if order > 2:
            raise ValueError("zeros of order above 2 are not supported")
        lead = complex(poly.deriv(order)(z)) / math.factorial(order)
        points[k] = (z, order, lead)
    return Problem(name, q, points, scale)


def _nearest(w, ref):
    return w if abs(w - ref) <= abs(w + ref) else -w


def trace_line(
    family,
    param: float,
    origin: int,
    angle: float,
    kind: str = ANTI,
    *,
    problem: Problem | None = None,
    step: float | None = None,
    r_max: float | None = None,
    l_max: float | None = None,
    r_min: float = 1e-3,
    r0: float = 1e-4,
    h_min: float | None = None,
) -> StokesLine:
    """Trace one line from singular point ``origin`` leaving at ``angle``.

    Stops when ``|z| > r_max``, the arc length exceeds ``l_max``, or the path
    comes within ``r_min`` of another singular point.  Lengths default to
    multiples of the problem scale (largest ``|singular point|``): step
    ``1e-2``, ``r_max`` 6, ``l_max`` 40.

    Raises
    ------
    StepFailure
        If the branch of ``sqrt(Q)`` jumps by more than ``pi/2`` in a step
        even after halving the step down to ``h_min``.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown line kind {kind!r}")
    prob = problem if problem is not None else family_problem(family, param)
    sc = prob.scale
    h0 = (step if step is not None else 1e-2) * sc
    r_max = (r_max if r_max is not None else 6.0) * sc
    l_max = (l_max if l_max is not None else 40.0) * sc
    r_min = r_min * sc
    h_min = h_min if h_min is not None else 1e-9 * sc
    q = prob.q
    z0, order, _ = prob.points[origin]
    others = [p[0] for vid, p in prob.points.items() if vid != origin]
    rot = 1.0 if kind == ANTI else 1j

    # seed point and the branch there
    e = cmath.exp(1j * angle)
    start = z0 + r0 * sc * e
    w = cmath.sqrt(q(start))
    sigma = 1.0 if (rot * w.conjugate() * e.conjugate()).real >= 0 else -1.0

    # phase integral over the seeding segment, with t = r0 u^2 taming the endpoint
    phi = 0j
    for x, wt in zip(_GL_X, _GL_W):
        t = r0 * sc * x * x
        wz = _nearest(cmath.sqrt(q(z0 + t * e)), w)
        phi += wt * wz * e * 2.0 * r0 * sc * x
    z = start

    def field_at(zz, ref):
        wz = cmath.sqrt(q(zz))
        wz = _nearest(wz, ref)
        if abs(cmath.phase(wz / ref)) > math.pi / 2:
            raise StepFailure("branch jump")
        return sigma * rot * wz.conjugate() / abs(wz), wz

    def project(zz, ph, wz):
        # one Newton move perpendicular to the line onto the level set
        wrong = ph.imag if kind == ANTI else ph.real
        dz = (-1j * wrong if kind == ANTI else -wrong) * wz.conjugate() / abs(wz) ** 2
        return zz + dz, ph + wz * dz

    z, phi = project(z, phi, w)
    pts, phis = [z0, z], [0j, phi]
    arc = abs(z - z0)
    reason = "length"
    while arc < l_max:
        dist = min((abs(z - o) for o in others), default=math.inf)
        if dist < r_min:
            reason = "singular_point"
            break
        if abs(z) > r_max:
            reason = "radius"
            break
        h = min(h0, max(0.25 * min(dist, abs(z - z0)), 0.0))
        h = max(h, 1e-3 * h0) if dist > 4 * r_min else h
        while True:
            if h < h_min:
                raise StepFailure(f"step fell below {h_min:.2e} near z = {z:.6g}")
            try:
                k1, w1 = field_at(z, w)
                k2, w2 = field_at(z + 0.5 * h * k1, w1)
                k3, w3 = field_at(z + 0.5 * h * k2, w2)
                k4, w4 = field_at(z + h * k3, w3)
                z_new = z + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4)
                _, w_new = field_at(z_new, w)
                dphi = 0j
                ref = w
                for x, wt in zip(_GL_X, _GL_W):
                    ref = _nearest(cmath.sqrt(q(z + x * (z_new - z))), ref)
                    dphi += wt * ref
                dphi *= z_new - z
                if abs(cmath.phase(_nearest(w_new, ref) / ref)) > math.pi / 2:
                    raise StepFailure("branch jump")
            except StepFailure:
                h *= 0.5
                continue
            break
        w_new = _nearest(w_new, ref)
        z_new, phi_new = project(z_new, phi + dphi, w_new)
        arc += abs(z_new - z)
        z, phi, w = z_new, phi_new, w_new
        pts.append(z)
        phis.append(phi)
    return StokesLine(kind, origin, float(angle), tuple(pts), tuple(phis), reason)


def diagram(family=None, param: float = 1.0, *, problem: Problem | None = None, strict: bool = True, **trace_kw) -> Diagram:
    """All lines from all singular points, ordered by vertex id, kind, then angle.

    Simple poles contribute only their single anti-Stokes line.  With
    ``strict=False`` a failed trace is recorded in ``failures`` and skipped.
    """
    prob = problem if problem is not None else family_problem(family, param)
    lines, failures = [], []
    for vid in sorted(prob.points):
        z0, order, lead = prob.points[vid]
        kinds = (ANTI,) if order < 0 else KINDS
        for kind in kinds:
            for ang in emanation_angles(lead, order, kind):
                try:
                    lines.append(trace_line(None, param, vid, ang, kind, problem=prob, **trace_kw))
                except StepFailure as exc:
                    if strict:
                        raise
                    failures.append((vid, kind, ang, str(exc)))
    verts = {vid: p[0] for vid, p in prob.points.items()}
    return Diagram(prob.name, float(param), verts, lines, list(prob.cuts), failures)


def _g(x):
    return f"{x:.10g}"


def diagram_csv(d: Diagram) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["line_id", "kind", "origin_vertex", "re", "im", "re_phase", "im_phase"])
    for i, ln in enumerate(d.lines):
        for z, ph in zip(ln.points, ln.phase_integral):
            wr.writerow([i, ln.kind, ln.origin, _g(z.real), _g(z.imag), _g(ph.real), _g(ph.imag)])
    return buf.getvalue()


def diagram_svg(d: Diagram, size: int = 600) -> str:
    """Static SVG 1.1: solid paths for anti-Stokes lines, dashed for Stokes, grey cuts."""
    allpts = [z for ln in d.lines for z in ln.points] + list(d.vertices.values())
    extent = max((max(abs(z.real), abs(z.imag)) for z in allpts), default=1.0) * 1.05 or 1.0
    s = size / (2 * extent)

    def xy(z):
        return f"{_g((z.real + extent) * s)},{_g((extent - z.imag) * s)}"

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f"<title>{d.family} lines, parameter {_g(d.param)}</title>",
        f'<line x1="0" y1="{_g(size / 2)}" x2="{size}" y2="{_g(size / 2)}" stroke="#ccc" stroke-width="0.5"/>',
        f'<line x1="{_g(size / 2)}" y1="0" x2="{_g(size / 2)}" y2="{size}" stroke="#ccc" stroke-width="0.5"/>',
    ]
    for a, b in d.cuts:
        out.append(f'<path class="cut" d="M {xy(a)} L {xy(b)}" stroke="#999" stroke-width="2" fill="none"/>')
    for ln in d.lines:
        dash = ' stroke-dasharray="6,4"' if ln.kind == STOKES else ""
        path = "M " + " L ".join(xy(z) for z in ln.points)
        out.append(f'<path class="{ln.kind}" d="{path}" stroke="black" stroke-width="1.2" fill="none"{dash}/>')
    for vid, z in sorted(d.vertices.items()):
        out.append(f'<circle cx="{xy(z).split(",")[0]}" cy="{xy(z).split(",")[1]}" r="3" fill="red"><title>{vid}</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
