import math

import numpy as np
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st
from scipy.linalg import eigh_tridiagonal

from phaseint.errors import NoBracket, NotApplicable, NotConverged
from phaseint.oracle import (
    OracleConfig,
    convergence_report,
    exact_levels,
    fd_matrix,
    hermitian_levels,
    pt_cubic_levels,
    pt_wronskian,
    sturm_count,
    with_overrides,
)
from phaseint.oracle import _sturm_eigenvalues
from phaseint.quantization import wkb_level


def test_weber_is_exact(oracle_levels):
    for lv in oracle_levels("weber"):
        assert abs(lv.value - (2 * lv.n + 1)) < 1e-5
        assert lv.convergence_estimate < 5e-4 * lv.value


def test_quartic_and_sextic_examples(oracle_levels):
    assert oracle_levels("quartic")[0].value == pytest.approx(1.0604, abs=5e-4)
    assert oracle_levels("sextic")[4].value == pytest.approx(21.7140, abs=1e-2)
    # well-known high-precision quartic ground state
    assert oracle_levels("quartic")[0].value == pytest.approx(1.0603620905, abs=1e-6)


def test_pt_examples(oracle_levels):
    lv = oracle_levels("pt_cubic")
    assert lv[0].value == pytest.approx(1.1562, abs=1e-3)
    assert lv[2].value == pytest.approx(7.5621, abs=5e-3)
    assert lv[0].value == pytest.approx(1.156267072, abs=1e-7)


@pytest.mark.parametrize("family", ["weber", "quartic", "sextic", "pt_cubic"])
def test_levels_increase_and_agree_with_wkb(oracle_levels, family):
    lv = oracle_levels(family)
    vals = [x.value for x in lv]
    assert all(a < b for a, b in zip(vals, vals[1:]))
    for n in (3, 4):
        assert abs(vals[n] - wkb_level(family, n)) < 1e-2 * vals[n]


def test_sturm_matches_dense_solver():
    diag, off = fd_matrix(4, 6.0, 400)
    ref = eigh_tridiagonal(diag, off, eigvals_only=True)
    shifts = np.linspace(-1, 60, 97)
    assert (sturm_count(diag, off, shifts) == np.searchsorted(ref, shifts)).all()
    levels = hermitian_levels("quartic", 2, OracleConfig(box_half_width=6.0, grid_points=2000, shooting_step=0.005))
    d2, o2 = fd_matrix(4, 6.0, 4001)
    fine = eigh_tridiagonal(d2, o2, eigvals_only=True, select="i", select_range=(0, 2))
    for lv, f in zip(levels, fine):
        assert abs(lv.value - f) < 2 * lv.convergence_estimate


def test_sturm_count_at_midpoints():
    diag, off = fd_matrix(6, 5.0, 2000)
    ev = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, 6))
    mids = 0.5 * (ev[:-1] + ev[1:])
    assert list(sturm_count(diag, off, mids)) == list(range(1, 7))


def test_convergence_report_orders():
    rows = convergence_report("quartic", 0, OracleConfig(grid_points=2000))
    assert [r[0] for r in rows] == [2000, 4000, 8000]
    d1, d2 = rows[1][1] - rows[0][1], rows[2][1] - rows[1][1]
    assert d1 > 0 and d2 > 0
    assert d1 / d2 == pytest.approx(4.0, rel=0.2)
    for n in (0, 2):
        for _, v in convergence_report("weber", n, OracleConfig(grid_points=2000)):
            assert abs(v - (2 * n + 1)) < 1e-4
    pt = convergence_report("pt_cubic", 0)
    assert [r[0] for r in pt] == [0.01, 0.005, 0.0025]
    assert abs(pt[1][1] - pt[0][1]) < 1e-4
    with pytest.raises(NotApplicable):
        convergence_report("budden", 0)


@pytest.mark.slow
def test_box_doubling_insensitive(oracle_levels):
    # same grid spacing on a box twice as wide
    base = oracle_levels("quartic")
    wide = hermitian_levels("quartic", 4, OracleConfig(box_half_width=20.0, grid_points=16001))
    for a, b in zip(base, wide):
        assert abs(a.value - b.value) < 1e-8 * a.value
    base = oracle_levels("pt_cubic")
    wide = pt_cubic_levels(4, OracleConfig(box_half_width=20.0, shooting_step=0.01))
    for a, b in zip(base, wide):
        assert abs(a.value - b.value) < 1e-8 * a.value


def test_pt_wronskian_is_real():
    energies = np.arange(0.05, 16.0, 0.05)
    w, psi, dpsi = pt_wronskian(energies)
    assert (np.abs(w.imag) < 1e-10 * np.abs(psi) * np.abs(dpsi)).all()


def test_no_bracket_when_scan_too_short():
    with pytest.raises(NoBracket):
        pt_cubic_levels(4, OracleConfig(energy_scan_max=5.0))


def test_not_converged_on_coarse_grid():
    with pytest.raises(NotConverged):
        hermitian_levels("sextic", 4, OracleConfig(box_half_width=400.0, grid_points=2000))


def test_config_validation():
    with pytest.raises(ValueError):
        OracleConfig(grid_points=100).validate()
    with pytest.raises(ValueError):
        OracleConfig(shooting_step=0.05).validate()
    with pytest.raises(ValueError):
        exact_levels("quartic", 1, OracleConfig(box_half_width=-1))
    cfg = with_overrides(None, grid_points=4000, box_half_width=None)
    assert cfg.grid_points == 4000 and cfg.box_half_width == 10.0
    with pytest.raises(NotApplicable):
        hermitian_levels("budden", 1)
    assert math.isfinite(OracleConfig().validate().bisection_tol)


@seed(1206)
@settings(max_examples=100, deadline=None)
@given(
    st.integers(3, 40),
    st.integers(0, 2**32 - 1),
)
def test_eigenvalue_interlacing(size, rng_seed):
    rng = np.random.default_rng(rng_seed)
    diag = rng.uniform(-5, 5, size)
    off = rng.uniform(0.1, 2, size - 1) * rng.choice([-1, 1], size - 1)
    k = size - 2
    upper = float(np.max(diag)) + 2 * float(np.max(np.abs(off))) + 1
    full = _sturm_eigenvalues(diag, off, size - 1, upper, 1e-12)
    sub = _sturm_eigenvalues(diag[:-1], off[:-1], k, upper, 1e-12)
    # strictly increasing, and Sturm counts at midpoints recover the index
    assert (np.diff(full) > 0).all()
    assert list(sturm_count(diag, off, 0.5 * (full[:-1] + full[1:]))) == list(range(1, size))
    # Cauchy interlacing against the leading principal submatrix
    slack = 1e-9
    assert (full[:-1] <= sub + slack).all() and (sub <= full[1:] + slack).all()
    assert np.allclose(full, np.linalg.eigvalsh(np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)), atol=1e-9)
