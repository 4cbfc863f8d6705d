"""One test per acceptance criterion; each records a PASS/FAIL line for the terminal summary.

Three criteria are red because a handful of printed reference values disagree
with the formulas that produce the rest of the same tables (and, for the exact
energies, with well-established literature values).  Those tests still assert
the full criterion; they are marked ``xfail(strict=True)`` with the analysis in
the reason, so an unexpected pass would itself fail the run.
"""

import math
import random
import time
from decimal import Decimal

import mpmath
import numpy as np
import pytest
from scipy.spatial import cKDTree

import conftest
import test_connection
import test_numerics
import test_oracle
from phaseint.connection import Orientation, monodromy_coefficients, run_itinerary, terminal_coefficients
from phaseint.geometry import ANTI, STOKES, diagram, family_problem
from phaseint.oracle import exact_levels
from phaseint.quantization import first_order_dominant_residual, level_table
from phaseint.stokes_exact import budden_stokes, weber_stokes
from purity import reintegrate, worst_impurity

PRINTED = {
    "quartic": {
        "e_exact": ["1.0604", "3.7964", "7.45567", "11.6374", "16.2618"],
        "e_wkb": ["0.8671", "3.7519", "7.4139", "11.6114", "16.2335"],
        "cos_w": ["-0.207879", "-8.9833e-3", "-3.8820e-4", "-1.6776e-5", "-7.2495e-7"],
        "e_pi": ["1.0246", "3.7424", "7.4144", "11.6114", "16.2335"],
    },
    "sextic": {
        "e_exact": ["1.1448", "4.3332", "9.0731", "14.9195", "21.7140"],
        "e_wkb": ["0.8008", "4.1612", "8.9535", "14.8316", "21.6224"],
        "cos_w": ["-0.36206", "2.3888e-2", "1.5727e-3", "-1.0354e-4", "-6.81617e-6"],
        "e_pi": ["1.1009", "4.1929", "8.9508", "14.8314", "21.6224"],
    },
    "pt_cubic": {
        "e_exact": ["1.1562", "4.1092", "7.5621", "11.3143", "15.2916"],
        "e_wkb": ["1.09427", "4.08949", "7.54898", "11.3043", "15.2832"],
        "cos_w": ["-6.5834e-2", "-2.8533e-4", "-1.2366e-6", "-5.3598e-9", "-2.3228e-11"],
        "e_pi": ["1.1496", "4.0892", "7.54898", "11.3043", "15.2832"],
    },
}

# "matches to all printed digits": the value rounded to the printed decimals is
# within one unit of the last printed digit (the tables truncate rather than round)
DIGIT_UNITS = 1.0
COS_REL = 5e-4  # 4 significant figures
TABLE_SECONDS = 1.0
ORACLE_REL = {"quartic": 5e-4, "sextic": 5e-4, "pt_cubic": 1e-3}
ORACLE_SECONDS = 60.0
DIAGRAM_SECONDS = 10.0
PURITY = 1e-6


def record(num, title, ok, detail):
    conftest.ACCEPTANCE_LINES.append((num, title, ok, detail))
    return ok


def _digit_miss(value, printed):
    exp = Decimal(printed).as_tuple().exponent
    return abs(round(value, -exp) - float(printed)) / 10.0**exp


def _table_check(family):
    t0 = time.perf_counter()
    rows = level_table(family, 4, use_oracle=False)
    elapsed = time.perf_counter() - t0
    misses = []
    for r in rows:
        for col in ("e_wkb", "e_pi"):
            units = _digit_miss(getattr(r, col), PRINTED[family][col][r.n])
            if units > DIGIT_UNITS + 1e-6:
                misses.append(f"{col}[{r.n}]={getattr(r, col):.7g} vs {PRINTED[family][col][r.n]} ({units:.1f} units)")
        ref = float(PRINTED[family]["cos_w"][r.n])
        rel = abs(r.cos_w - ref) / abs(ref)
        if rel > COS_REL:
            misses.append(f"cos_w[{r.n}]={r.cos_w:.6g} vs {PRINTED[family]['cos_w'][r.n]} (rel {rel:.1e})")
    ok = not misses and elapsed < TABLE_SECONDS
    detail = f"{elapsed * 1e3:.0f} ms; " + ("all 15 entries match" if not misses else "; ".join(misses))
    return ok, detail


def test_criterion_1_quartic_table():
    ok, detail = _table_check("quartic")
    record(1, "quartic table", ok, detail)
    assert ok, detail


@pytest.mark.xfail(
    strict=True,
    reason="printed sextic cos(W) for n=0 is -0.36206; the formula gives -0.362846, and the "
    "printed E_PI=1.1009 of the same row is only consistent with -0.36285",
)
def test_criterion_2_sextic_table():
    ok, detail = _table_check("sextic")
    record(2, "sextic table", ok, detail)
    assert ok, detail


@pytest.mark.xfail(
    strict=True,
    reason="printed PT cos(W) for n=3,4 differ by 5.5e-4 and 6.3e-4 relative; the whole printed column "
    "is reproduced to 4 figures by -exp(-1.732 W_n), i.e. with sqrt(3) rounded to 1.732",
)
def test_criterion_3_pt_table():
    ok, detail = _table_check("pt_cubic")
    record(3, "PT cubic table", ok, detail)
    assert ok, detail


@pytest.mark.xfail(
    strict=True,
    reason="printed E_exact for quartic n=1,3 (3.7964, 11.6374) and sextic n=1,3 (4.3332, 14.9195) "
    "disagree with the well-known values 3.79967, 11.64475, 4.33859, 14.93516 that the oracle reproduces",
)
def test_criterion_4_oracle_accuracy():
    t0 = time.perf_counter()
    misses = []
    worst = {}
    for fam in ("quartic", "sextic", "pt_cubic"):
        levels = exact_levels(fam, 4)
        conftest._LEVEL_CACHE[(fam, 4)] = levels
        worst[fam] = 0.0
        for lv in levels:
            ref = float(PRINTED[fam]["e_exact"][lv.n])
            rel = abs(lv.value - ref) / ref
            worst[fam] = max(worst[fam], rel)
            if rel > ORACLE_REL[fam]:
                misses.append(f"{fam}[{lv.n}]={lv.value:.6f} vs {ref} (rel {rel:.1e})")
    elapsed = time.perf_counter() - t0
    ok = not misses and elapsed < ORACLE_SECONDS
    head = f"{elapsed:.1f} s; worst rel " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    record(4, "oracle accuracy", ok, head + ("" if not misses else "; misses: " + "; ".join(misses)))
    assert ok, misses


def test_criterion_5_exact_stokes_constants():
    rng = random.Random(5005)
    modulus = max(abs(abs(budden_stokes(c)) - (1 - math.exp(-math.pi * c))) for c in (rng.uniform(1e-9, 30) for _ in range(50)))
    jumps = max(abs(weber_stokes(m - 1e-5) - weber_stokes(m + 1e-5)) for m in (1, 3, 5, 7, 9))

    def ordered(fn):
        g = [abs(fn(p) - 1j) for p in (20, 5, 1.5)]
        return g[0] < g[1] < g[2]

    ok = modulus < 1e-10 and jumps < 1e-3 and ordered(weber_stokes) and ordered(budden_stokes)
    record(
        5,
        "exact Stokes constants",
        ok,
        f"budden modulus err {modulus:.1e}; weber odd-integer jump {jumps:.1e}; "
        f"gap ordering weber {ordered(weber_stokes)}, budden {ordered(budden_stokes)}",
    )
    assert ok


def test_criterion_6_engine_equivalence():
    rng = random.Random(6006)
    worst = 0.0
    for fam in ("quartic", "sextic", "pt_cubic"):
        for _ in range(20):
            w = rng.uniform(0.5, 10)
            s = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            got = terminal_coefficients(fam, w, s)
            ref = monodromy_coefficients(fam, w, s)
            for a, b in zip(got, ref):
                worst = max(worst, abs(a - b) / abs(b))
    loop = 0.0
    for n in range(6):
        for _ in range(10):
            s = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            out = run_itinerary("weber", (n + 0.5) * math.pi, s)
            loop = max(loop, abs(out.coefficient(1, Orientation.FROM) - 1))
    ok = worst < 1e-10 and loop < 1e-12
    record(6, "connection engine", ok, f"worst rel diff {worst:.1e} over 60 points; weber loop |c-1| {loop:.1e}")
    assert ok


def _mp_residual(n):
    with mpmath.workdps(60):
        wn = (n + mpmath.mpf(1) / 2) * mpmath.pi
        a = mpmath.exp(-wn)
        sign = -1 if n % 2 else 1
        w = wn + mpmath.asin(sign * a)
        s2 = -((1 + a * mpmath.exp(-wn) - mpmath.exp(-2 * wn) / 2) ** 2)
        r = mpmath.exp(w) * (1 + s2) + 2 * s2 * mpmath.cos(w) + mpmath.exp(-w) * s2
        return float(r), float(mpmath.exp(-3 * wn))


def test_criterion_7_first_order_consistency():
    ratios, agree = [], 0.0
    for n in range(5):
        ref, scale = _mp_residual(n)
        stable = first_order_dominant_residual(n)
        agree = max(agree, abs(stable - ref) / abs(ref))
        ratios.append(abs(ref) / scale)
    c = max(ratios)
    # least-squares fit of log|R| = log C - 3 W_n for the record
    w = np.array([(n + 0.5) * math.pi for n in range(5)])
    fit = math.exp(np.mean(np.log(ratios)))
    ok = c < 10 and agree < 1e-9
    record(7, "first-order consistency", ok, f"C = max|R|e^(3W) = {c:.3f} (log-mean fit {fit:.3f}); "
           f"stable vs 60-digit rel {agree:.1e}; W_n up to {w[-1]:.2f}")
    assert ok


def _hausdorff(a, b):
    pa, pb = np.column_stack([a.real, a.imag]), np.column_stack([b.real, b.imag])
    return max(cKDTree(pb).query(pa)[0].max(), cKDTree(pa).query(pb)[0].max())


def test_criterion_8_geometry():
    cases = [("weber", 1.0), ("quartic", 1.0), ("sextic", 1.0), ("pt_cubic", 1.0), ("budden", 2.0)]
    problems, notes, ok = [], [], True
    for fam, param in cases:
        prob = family_problem(fam, param)
        zeros = sum(1 for p in prob.points.values() if p[1] == 1)
        poles = sum(1 for p in prob.points.values() if p[1] == -1)
        t0 = time.perf_counter()
        d = diagram(fam, param)
        elapsed = time.perf_counter() - t0
        counts = (d.count(ANTI), d.count(STOKES))
        want = (3 * zeros + poles, 3 * zeros)
        singular = [p[0] for p in prob.points.values()]
        impurity = max(
            max(worst_impurity(ln.kind, ln.phase_integral), worst_impurity(ln.kind, reintegrate(prob.q, ln.points, singular)))
            for ln in d.lines
        )
        tol = 2 * 1e-2 * prob.scale
        sym = []
        for kind in (ANTI, STOKES):
            pts = np.array([z for ln in d.lines if ln.kind == kind for z in ln.points])
            if fam != "pt_cubic":
                sym.append(_hausdorff(pts, pts.conj()))
            if fam in ("weber", "quartic", "sextic"):
                sym.append(_hausdorff(pts, -pts))
        sym_worst = max(sym, default=0.0)
        good = counts == want and impurity < PURITY and sym_worst < tol and elapsed < DIAGRAM_SECONDS
        ok = ok and good
        notes.append(f"{fam} {counts[0]}+{counts[1]} lines, purity {impurity:.0e}, sym {sym_worst:.0e}, {elapsed:.2f} s")
        if not good:
            problems.append(fam)
    record(8, "geometry structure", ok, "; ".join(notes))
    assert ok, problems


PROPERTIES = [
    ("quadrature linearity", 1201, test_numerics.test_quadrature_is_linear),
    ("Gamma recurrence", 1202, test_numerics.test_gamma_recurrence),
    ("Gamma reflection", 1203, test_numerics.test_gamma_reflection),
    ("root bracket contract", 1204, test_numerics.test_root_bracket_contract),
    ("engine linearity", 1205, test_connection.test_engine_linearity),
    ("eigenvalue interlacing", 1206, test_oracle.test_eigenvalue_interlacing),
]


def test_criterion_9_property_suites():
    results = []
    for name, seed_value, prop in PROPERTIES:
        try:
            prop()
            results.append((name, seed_value, True))
        except Exception as exc:  # noqa: BLE001
            results.append((name, seed_value, f"{type(exc).__name__}"))
    ok = all(r[2] is True for r in results)
    detail = ", ".join(f"{n} (seed {s}) {'ok' if r is True else r}" for n, s, r in results) + "; 100 cases each"
    record(9, "property suites", ok, detail)
    assert ok
