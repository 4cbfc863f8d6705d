"""Brute-force eigenvalues used as the "exact" column of the level tables.

Hermitian families (``-psi'' + x^p psi = E psi``) are discretized with
second-order central differences on ``[-L, L]``; the resulting symmetric
tridiagonal matrix is solved by Sturm-sequence counting and multisection,
then Richardson-extrapolated over grids ``h`` and ``h/2``.

The PT-symmetric cubic ``-psi'' + i x^3 psi = E psi`` is shot inward from
``x = L`` with RK4.  If ``psi`` is the solution decaying at ``+inf``, then
``conj(psi(-x))`` is the solution decaying at ``-inf``, and their Wronskian at
the origin is ``2 Re(conj(psi(0)) psi'(0))``: a real function of real ``E``
whose sign changes bracket the levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import NoBracket, NotApplicable, NotConverged, OracleConfigError
from .numerics import find_root_bracketed
from .potentials import Family, as_family, get_family, action_inverse

__all__ = [
    "OracleConfig",
    "Eigenvalue",
    "hermitian_levels",
    "pt_cubic_levels",
    "exact_levels",
    "convergence_report",
    "sturm_count",
    "fd_matrix",
    "pt_shoot",
    "pt_residual",
    "pt_wronskian",
]

_POWERS = {Family.WEBER: 2, Family.QUARTIC: 4, Family.SEXTIC: 6}
ACCEPT_REL = 5e-4


@dataclass(frozen=True)
class OracleConfig:
    box_half_width: float = 10.0
    grid_points: int = 8000
    shooting_step: float = 0.01
    energy_scan_max: float | None = None  # None: a little above the WKB estimate of the top level
    scan_step: float = 0.05
    bisection_tol: float = 1e-8

    def validate(self):
        if self.box_half_width <= 0:
            raise ValueError("box_half_width must be positive")
        if self.grid_points < 2000:
            raise ValueError("grid_points must be >= 2000 for table-grade accuracy")
        if not 0 < self.shooting_step <= 1e-3 * self.box_half_width:
            raise ValueError("shooting_step must be in (0, 1e-3 * box_half_width]")
        if self.scan_step <= 0:
            raise ValueError("scan_step must be positive")
        return self


@dataclass(frozen=True)
class Eigenvalue:
    n: int
    value: float
    convergence_estimate: float


def fd_matrix(power: int, half_width: float, points: int):
    """Diagonal and off-diagonal of the central-difference ``-d^2/dx^2 + x^power``."""
    h = 2.0 * half_width / (points + 1)
    x = -half_width + h * np.arange(1, points + 1)
    diag = 2.0 / h**2 + x**power
    off = np.full(points - 1, -1.0 / h**2)
    return diag, off


def sturm_count(diag, off, shifts):
    """Number of eigenvalues below each shift (LDL^T inertia recurrence)."""
    shifts = np.atleast_1d(np.asarray(shifts, dtype=float))
    off2 = np.asarray(off) ** 2
    tiny = np.finfo(float).tiny ** 0.5
    d = diag[0] - shifts
    count = (d < 0).astype(int)
    for a, b2 in zip(diag[1:], off2):
        d = np.where(d == 0.0, tiny, d)
        d = (a - shifts) - b2 / d
        count += d < 0
    return count


def _sturm_eigenvalues(diag, off, n_max, upper, tol, splits=16):
    """Lowest ``n_max + 1`` eigenvalues by simultaneous multisection."""
    k = np.arange(n_max + 1)
    lo = np.zeros(n_max + 1)
    lo[:] = min(0.0, float(np.min(diag)) - 2.0 * float(np.max(np.abs(off))))
    hi = np.full(n_max + 1, float(upper))
    while sturm_count(diag, off, [hi[0]])[0] < n_max + 1:
        hi *= 2.0
    frac = np.linspace(0.0, 1.0, splits + 1)[1:-1]
    while np.max(hi - lo) > tol:
        grid = lo[:, None] + (hi - lo)[:, None] * frac[None, :]
        counts = sturm_count(diag, off, grid.ravel()).reshape(grid.shape)
        below = counts <= k[:, None]  # eigenvalue k lies above these shifts
        nbelow = below.sum(axis=1)
        new_lo = np.where(nbelow > 0, grid[np.arange(len(k)), np.maximum(nbelow - 1, 0)], lo)
        new_hi = np.where(nbelow < len(frac), grid[np.arange(len(k)), np.minimum(nbelow, len(frac) - 1)], hi)
        lo, hi = new_lo, new_hi
    return 0.5 * (lo + hi)


def _fd_levels(power, n_max, half_width, points, tol):
    diag, off = fd_matrix(power, half_width, points)
    fam = {2: Family.WEBER, 4: Family.QUARTIC, 6: Family.SEXTIC}[power]
    upper = 1.5 * action_inverse(fam, (n_max + 1.5) * math.pi) + 1.0
    return _sturm_eigenvalues(diag, off, n_max, upper, tol)


def hermitian_levels(family, n_max: int, config: OracleConfig | None = None):
    """Lowest ``n_max + 1`` levels of ``-psi'' + x^p psi = E psi``, Richardson-extrapolated.

    Raises
    ------
    NotConverged
        If the two grid levels disagree by more than ``5e-4`` relative.
    """
    fam = as_family(family)
    if fam not in _POWERS:
        raise NotApplicable(f"{fam} is not a Hermitian bound-state family")
    cfg = (config or OracleConfig()).validate()
    power = _POWERS[fam]
    n_coarse = cfg.grid_points
    n_fine = 2 * (n_coarse + 1) - 1  # exactly halves h
    tol = cfg.bisection_tol
    coarse = _fd_levels(power, n_max, cfg.box_half_width, n_coarse, tol)
    fine = _fd_levels(power, n_max, cfg.box_half_width, n_fine, tol)
    extrapolated = (4.0 * fine - coarse) / 3.0
    out = []
    for n in range(n_max + 1):
        est = abs(fine[n] - coarse[n])
        if est > ACCEPT_REL * abs(extrapolated[n]):
            raise NotConverged(f"{fam} level {n}: grid levels differ by {est:.3e}")
        out.append(Eigenvalue(n, float(extrapolated[n]), float(est)))
    _check_turning_points(fam, out, cfg)
    return out


def _check_turning_points(fam, levels, cfg):
    top = levels[-1].value
    reach = top ** get_family(fam).zero_scale
    if cfg.box_half_width <= 2.0 * reach:
        raise OracleConfigError(
            f"box half-width {cfg.box_half_width} is not beyond twice the turning point {reach:.3f}"
        )


def pt_shoot(energies, half_width: float, step: float):
    """Integrate the decaying solution from ``x = L`` to 0; returns ``(psi(0), psi'(0))``.

    Vectorized over ``energies``.  The state is rescaled every step so the
    inward-growing solution never overflows.
    """
    e = np.atleast_1d(np.asarray(energies, dtype=float)).astype(complex)
    nsteps = int(round(half_width / step))
    h = -half_width / nsteps

    def pot(x):
        return 1j * x**3 - e

    x = half_width
    psi = np.ones_like(e)
    k = np.sqrt(pot(x))
    k = np.where(k.real < 0, -k, k)
    dpsi = -k * psi  # Re(psi'/psi) < 0: decays outward
    for _ in range(nsteps):
        v0 = pot(x)
        vm = pot(x + 0.5 * h)
        v1 = pot(x + h)
        k1p, k1d = dpsi, v0 * psi
        k2p, k2d = dpsi + 0.5 * h * k1d, vm * (psi + 0.5 * h * k1p)
        k3p, k3d = dpsi + 0.5 * h * k2d, vm * (psi + 0.5 * h * k2p)
        k4p, k4d = dpsi + h * k3d, v1 * (psi + h * k3p)
        psi = psi + h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p)
        dpsi = dpsi + h / 6.0 * (k1d + 2 * k2d + 2 * k3d + k4d)
        x += h
        scale = np.abs(psi) + np.abs(dpsi)
        psi, dpsi = psi / scale, dpsi / scale
    return psi, dpsi


def pt_wronskian(energies, half_width: float = 10.0, step: float = 0.01):
    """Complex Wronskian of the left- and right-decaying solutions at ``x = 0``."""
    psi, dpsi = pt_shoot(energies, half_width, step)
    left, dleft = np.conj(psi), -np.conj(dpsi)
    return left * dpsi - dleft * psi, psi, dpsi


def pt_residual(energies, half_width: float = 10.0, step: float = 0.01):
    """``2 Re(conj(psi) psi') / (|psi| |psi'|)`` at the origin; vanishes at the levels."""
    psi, dpsi = pt_shoot(energies, half_width, step)
    return 2.0 * np.real(np.conj(psi) * dpsi) / (np.abs(psi) * np.abs(dpsi))


def _pt_roots(n_max, half_width, step, scan_max, scan_step, tol):
    grid = np.arange(scan_step, scan_max + scan_step, scan_step)
    r = pt_residual(grid, half_width, step)
    idx = np.nonzero(np.sign(r[:-1]) * np.sign(r[1:]) < 0)[0]
    if len(idx) < n_max + 1:
        raise NoBracket(
            f"scan up to E={scan_max} bracketed {len(idx)} of {n_max + 1} levels; "
            "raise energy_scan_max or refine scan_step"
        )
    f = lambda en: float(pt_residual([en], half_width, step)[0])  # noqa: E731
    return np.array([find_root_bracketed(f, grid[i], grid[i + 1], tol) for i in idx[: n_max + 1]])


def pt_cubic_levels(n_max: int, config: OracleConfig | None = None):
    """Lowest ``n_max + 1`` levels of ``H = p^2 + i x^3`` by PT-reduced shooting."""
    cfg = (config or OracleConfig()).validate()
    scan_max = cfg.energy_scan_max
    if scan_max is None:
        scan_max = action_inverse(Family.PT_CUBIC, (n_max + 1.5) * math.pi) + 1.0
    coarse = _pt_roots(n_max, cfg.box_half_width, cfg.shooting_step, scan_max, cfg.scan_step, cfg.bisection_tol)
    fine = _pt_roots(n_max, cfg.box_half_width, cfg.shooting_step / 2, scan_max, cfg.scan_step, cfg.bisection_tol)
    out = []
    for n in range(n_max + 1):
        est = abs(fine[n] - coarse[n])
        if est > ACCEPT_REL * abs(fine[n]):
            raise NotConverged(f"pt_cubic level {n}: step halving moved it by {est:.3e}")
        out.append(Eigenvalue(n, float(fine[n]), float(est)))
    _check_turning_points(Family.PT_CUBIC, out, cfg)
    return out


def exact_levels(family, n_max: int, config: OracleConfig | None = None):
    fam = as_family(family)
    if fam is Family.PT_CUBIC:
        return pt_cubic_levels(n_max, config)
    return hermitian_levels(fam, n_max, config)


def convergence_report(family, n: int, config: OracleConfig | None = None, levels: int = 3):
    """Raw (unextrapolated) level ``n`` across successive refinements.

    Hermitian families double the grid point count starting from
    ``config.grid_points``; the cubic halves the shooting step.
    """
    fam = as_family(family)
    cfg = (config or OracleConfig()).validate()
    rows = []
    if fam is Family.PT_CUBIC:
        scan_max = cfg.energy_scan_max or action_inverse(fam, (n + 1.5) * math.pi) + 1.0
        step = cfg.shooting_step
        for _ in range(levels):
            val = _pt_roots(n, cfg.box_half_width, step, scan_max, cfg.scan_step, cfg.bisection_tol)[n]
            rows.append((step, float(val)))
            step /= 2
        return rows
    if fam not in _POWERS:
        raise NotApplicable(f"{fam} has no bound states")
    points = cfg.grid_points
    for _ in range(levels):
        val = _fd_levels(_POWERS[fam], n, cfg.box_half_width, points, cfg.bisection_tol)[n]
        rows.append((points, float(val)))
        points *= 2
    return rows


def with_overrides(config: OracleConfig | None, **kw) -> OracleConfig:
    kw = {k: v for k, v in kw.items() if v is not None}
    return replace(config or OracleConfig(), **kw)
