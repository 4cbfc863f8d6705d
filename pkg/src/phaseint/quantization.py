"""Bohr-Sommerfeld levels, first-order phase-integral corrections and Stokes estimates.

The corrected condition for each anharmonic family has the form
``cos(W) = t_n`` where the right-hand side ``t_n`` is evaluated at the
unperturbed action ``W_n = (n + 1/2) pi``.  Writing ``W = W_n + delta`` gives
``sin(delta) = -(-1)^n t_n``, solved on the principal arcsin branch.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .errors import NotApplicable, PhaseIntError
from .potentials import SQRT3, Family, action, action_inverse, as_family, get_family

__all__ = [
    "EnergyRecord",
    "StokesEstimate",
    "wkb_action",
    "wkb_level",
    "pi_cos_target",
    "pi_delta",
    "pi_action",
    "pi_level",
    "pi_correction",
    "stokes_estimate",
    "level_table",
    "first_order_dominant_residual",
]

log = logging.getLogger(__name__)

_CORRECTED = (Family.QUARTIC, Family.SEXTIC, Family.PT_CUBIC)


@dataclass(frozen=True)
class EnergyRecord:
    """One table row.  ``e_exact`` is ``None`` when the oracle was skipped or failed."""

    n: int
    e_wkb: float
    cos_w: float
    e_pi: float
    e_exact: float | None = None
    exact_estimate: float | None = None
    oracle_failed: bool = False


@dataclass(frozen=True)
class StokesEstimate:
    family: Family
    n: int
    s: complex
    order_remainder: float


def _check_n(n):
    if int(n) != n or n < 0:
        raise ValueError(f"level index must be a nonnegative integer, got {n!r}")
    return int(n)


def wkb_action(n: int) -> float:
    return (_check_n(n) + 0.5) * math.pi


def wkb_level(family, n: int) -> float:
    """Energy solving ``W(E) = (n + 1/2) pi``."""
    fam = as_family(family)
    if not get_family(fam).has_bound_states:
        raise NotApplicable(f"{fam} has no bound states")
    return action_inverse(fam, wkb_action(n))


def _target_at(fam: Family, w: float) -> float:
    if fam is Family.QUARTIC:
        return -math.exp(-w)
    if fam is Family.SEXTIC:
        return -2.0 * math.exp(-SQRT3 * w / 2.0) * math.cos(w / 2.0)
    if fam is Family.PT_CUBIC:
        return -math.exp(-SQRT3 * w)
    raise NotApplicable(f"{fam} has no first-order correction to cos(W)")


def pi_cos_target(family, n: int) -> float:
    """Right-hand side of the corrected condition ``cos(W) = t``, evaluated at ``W_n``.

    This is the ``cos(W)`` column of the level tables.
    """
    return _target_at(as_family(family), wkb_action(n))


def pi_delta(family, n: int) -> float:
    """Shift ``delta`` with ``cos(W_n + delta) = t_n`` and ``|delta| < pi/2``."""
    n = _check_n(n)
    sign = -1.0 if n % 2 else 1.0
    return math.asin(-sign * pi_cos_target(family, n))


def pi_action(family, n: int, self_consistent: bool = False, tol: float = 1e-14) -> float:
    """Corrected action ``W_n + delta``.

    With ``self_consistent=True`` the right-hand side is re-evaluated at the
    corrected ``W`` until it stops moving.  That mode is an experiment; the
    tables are built from the one-shot value.
    """
    fam = as_family(family)
    n = _check_n(n)
    w_n = wkb_action(n)
    w = w_n + pi_delta(fam, n)
    if not self_consistent:
        return w
    sign = -1.0 if n % 2 else 1.0
    for _ in range(200):
        w_new = w_n + math.asin(-sign * _target_at(fam, w))
        if abs(w_new - w) <= tol * w:
            return w_new
        w = w_new
    return w


def pi_level(family, n: int, self_consistent: bool = False) -> float:
    """Phase-integral-corrected energy.  For the harmonic oscillator this is the WKB level."""
    fam = as_family(family)
    if fam is Family.WEBER:
        return wkb_level(fam, n)
    return action_inverse(fam, pi_action(fam, n, self_consistent))


def pi_correction(family, n: int) -> float:
    """``pi_level - wkb_level`` without the cancellation of subtracting two nearby energies.

    With ``E = (W/c)^(1/p)`` the difference is ``E_wkb * expm1(log1p(delta/W_n)/p)``,
    which stays accurate after the correction drops below the resolution of ``E``.
    """
    fam = as_family(family)
    if fam is Family.WEBER:
        return 0.0
    w_n = wkb_action(n)
    p = get_family(fam).action_exponent
    return wkb_level(fam, n) * math.expm1(math.log1p(pi_delta(fam, n) / w_n) / p)


def stokes_estimate(family, n: int) -> StokesEstimate:
    """First-order Stokes constant consistent with the corrected quantization.

    For the quartic, ``S = i(1 - cos(W) e^{-W_n} - e^{-2 W_n}/2)`` with
    ``cos(W)`` the corrected value; the neglected terms are of order
    ``e^{-3 W_n}``.  For the sextic and the PT cubic the estimate is ``S = i``,
    truncated at order ``e^{-sqrt(3) W_n}``.
    """
    fam = as_family(family)
    if fam not in _CORRECTED:
        raise NotApplicable(f"no Stokes estimate for {fam}")
    w_n = wkb_action(n)
    if fam is Family.QUARTIC:
        a = math.exp(-w_n)
        s = 1j * (1.0 - pi_cos_target(fam, n) * a - 0.5 * a * a)
        return StokesEstimate(fam, n, s, math.exp(-3.0 * w_n))
    return StokesEstimate(fam, n, 1j, math.exp(-SQRT3 * w_n))


def first_order_dominant_residual(n: int) -> float:
    """Quartic dominant residual at ``(W_n + delta_n, stokes_estimate)``, free of cancellation.

    With ``A = e^{-W_n}``, ``cos(W) = -A`` and ``S = i(1 + A^2/2)`` the expression
    ``e^W (1 + S^2) + 2 S^2 cos(W) + e^{-W} S^2`` collapses to

        -4 A sinh^2(delta/2) + A^3 (2 - e^delta/4 - e^-delta) + A^5 (1/2 - e^-delta/4)

    which is what this returns.  Evaluating the raw expression in floating
    point loses everything to the ``e^W (1 + S^2)`` cancellation once ``n > 2``.
    """
    w_n = wkb_action(n)
    d = pi_delta(Family.QUARTIC, n)
    a = math.exp(-w_n)
    ep, em = math.exp(d), math.exp(-d)
    return (
        -4.0 * a * math.sinh(0.5 * d) ** 2
        + a**3 * (2.0 - 0.25 * ep - em)
        + a**5 * (0.5 - 0.25 * em)
    )


def level_table(family, n_max: int, oracle_config=None, use_oracle: bool = True):
    """Rows ``n = 0 .. n_max`` of the level table.

    When ``use_oracle`` is set the exact column comes from the spectral oracle;
    if the oracle raises, the rows are still returned with ``e_exact = None``
    and ``oracle_failed = True``.
    """
    fam = as_family(family)
    if not get_family(fam).has_bound_states:
        raise NotApplicable(f"{fam} has no bound states")
    n_max = _check_n(n_max)
    exact = None
    failed = False
    if use_oracle:
        from .oracle import exact_levels

        try:
            exact = exact_levels(fam, n_max, oracle_config)
        except PhaseIntError as exc:
            log.warning("oracle failed for %s: %s", fam, exc)
            failed = True
    rows = []
    for n in range(n_max + 1):
        cos_w = 0.0 if fam is Family.WEBER else pi_cos_target(fam, n)
        rows.append(
            EnergyRecord(
                n=n,
                e_wkb=wkb_level(fam, n),
                cos_w=cos_w,
                e_pi=pi_level(fam, n),
                e_exact=None if exact is None else exact[n].value,
                exact_estimate=None if exact is None else exact[n].convergence_estimate,
                oracle_failed=failed,
            )
        )
    return rows


def corrected_cos(family, n: int) -> float:
    """``cos`` of the corrected action; equals ``pi_cos_target`` up to roundoff."""
    return math.cos(pi_action(family, n))


# kept for symmetry with potentials.action; handy in demos
def level_action(family, energy: float) -> float:
    return action(family, energy)
