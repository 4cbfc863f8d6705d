import cmath
import math
import random

import pytest

from phaseint.errors import MissingFactor, NotApplicable, PoleAtOrigin, UnknownVertex
from phaseint.potentials import (
    Family,
    action,
    action_inverse,
    bound_state_families,
    connection_factor,
    connection_factors,
    families,
    get_family,
    potential_profile,
    q_eval,
    singular_points,
    turning_points,
)


def test_registry_contents():
    assert {f.value for f in families()} == {"weber", "budden", "quartic", "sextic", "pt_cubic"}
    assert Family.BUDDEN not in bound_state_families()
    assert len(bound_state_families()) == 4
    with pytest.raises(NotApplicable):
        get_family("octic")


def test_q_eval_examples():
    assert q_eval("quartic", 0, 1.0) == 1
    assert q_eval("pt_cubic", 1j, 0.0) == pytest.approx(-1)
    for c in (0.5, 2.0, 7.0):
        assert abs(q_eval("budden", -c, c)) < 1e-15
    with pytest.raises(PoleAtOrigin):
        q_eval("budden", 0, 2.0)


@pytest.mark.parametrize("family", ["weber", "budden", "quartic", "sextic", "pt_cubic"])
@pytest.mark.parametrize("param", [0.3, 1.0, 4.7])
def test_turning_points_are_zeros(family, param):
    for z in turning_points(family, param).values():
        assert abs(q_eval(family, z, param)) <= 1e-10 * (1 + param)


def test_turning_point_layouts():
    e = 2.0
    quart = turning_points("quartic", e)
    assert quart[1] == pytest.approx(e**0.25)
    assert quart[2] == pytest.approx(1j * e**0.25)
    sext = turning_points("sextic", e)
    for k in range(1, 7):
        assert sext[k] == pytest.approx(e ** (1 / 6) * cmath.exp(1j * (k - 1) * math.pi / 3))
    pt = turning_points("pt_cubic", e)
    r = e ** (1 / 3)
    assert sorted(pt.values(), key=lambda z: z.real) == pytest.approx(
        sorted([r * 1j, r * cmath.exp(-1j * math.pi / 6), r * cmath.exp(-5j * math.pi / 6)], key=lambda z: z.real)
    )
    assert turning_points("weber", 4.0) == {1: 2.0, 2: -2.0}
    assert 0 in singular_points("budden", 1.0)


def test_action_examples():
    assert action("weber", 1.0) == pytest.approx(math.pi / 2)
    assert action("quartic", 1.0) == pytest.approx(1.74804, abs=1e-5)
    assert action("pt_cubic", 1.0) == pytest.approx(0.866025 * 1.68262, abs=2e-6)
    with pytest.raises(NotApplicable):
        action("budden", 1.0)
    with pytest.raises(ValueError):
        action("quartic", -1.0)


def test_action_inverse_examples():
    assert round(action_inverse("quartic", math.pi / 2), 4) == 0.8671
    assert round(action_inverse("sextic", math.pi / 2), 4) == 0.8008
    for n in range(6):
        assert action_inverse("weber", (n + 0.5) * math.pi) == pytest.approx(2 * n + 1, rel=1e-14)


@pytest.mark.parametrize("family", ["weber", "quartic", "sextic", "pt_cubic"])
def test_action_scaling_and_inverse(family):
    rng = random.Random(31)
    p = get_family(family).action_exponent
    for _ in range(50):
        e, s = rng.uniform(0.1, 30), rng.uniform(0.5, 4)
        assert action(family, s * e) == pytest.approx(s**p * action(family, e), rel=1e-12)
        w = rng.uniform(0.1, 40)
        assert action(family, action_inverse(family, w)) == pytest.approx(w, rel=1e-10)


def test_profiles():
    assert potential_profile("weber", 1.0, [1.0]) == [(1.0, 0.0)]
    assert potential_profile("quartic", 1.0604, [0.0])[0][1] == pytest.approx(-1.0604)
    assert potential_profile("pt_cubic", 0.0, [1.0])[0][1] == pytest.approx(math.sqrt(3) - 1 / 3)
    assert potential_profile("pt_cubic", 0.0, [-1.0])[0][1] == pytest.approx(math.sqrt(3) - 1 / 3)
    with pytest.raises(NotApplicable):
        potential_profile("budden", 1.0, [0.0])
    with pytest.raises(ValueError):
        potential_profile("quartic", 1.0, [math.inf])


def test_printed_connection_factors():
    w = 2.3
    assert connection_factor("quartic", 1, 3, w) == pytest.approx(cmath.exp(1j * w))
    assert connection_factor("quartic", 1, 2, w) == pytest.approx(cmath.exp(w / 2) * cmath.exp(1j * w / 2))
    assert connection_factor("sextic", 3, 2, w) == pytest.approx(cmath.exp(-1j * w / 2))
    assert connection_factor("pt_cubic", 1, 2, w) == pytest.approx(
        cmath.exp(math.sqrt(3) * w / 2) * cmath.exp(-1j * w / 2)
    )
    assert connection_factor("budden", 0, 1, 1.7) == pytest.approx(math.exp(math.pi * 1.7 / 2))


@pytest.mark.parametrize("family", ["weber", "budden", "quartic", "sextic", "pt_cubic"])
def test_reversed_factors_are_reciprocal(family):
    for (k, l), v in connection_factors(family, 1.9).items():
        assert v * connection_factors(family, 1.9)[(l, k)] == pytest.approx(1, rel=1e-14)
        assert connection_factor(family, k, k, 1.9) == 1


def test_factor_errors():
    with pytest.raises(UnknownVertex):
        connection_factor("quartic", 1, 9, 1.0)
    with pytest.raises(MissingFactor):
        connection_factor("quartic", 1, 4, 1.0)


def test_quartic_factor_matches_contour_integral():
    # [1,3] = exp(i int_{Z1}^{Z3} sqrt(Q)) on the sheet with sqrt(Q(0)) = -sqrt(E);
    # integrate along the real axis where sqrt(E - x^4) is real
    from phaseint.numerics import quad_adaptive

    e = 1.7
    r = e**0.25
    w = action("quartic", e)
    integral = -quad_adaptive(lambda x: math.sqrt(max(e - x**4, 0.0)), -r, r).value
    # from Z1 = +r to Z3 = -r reverses the orientation
    assert cmath.exp(1j * -integral) == pytest.approx(connection_factor("quartic", 1, 3, w), rel=1e-9)
