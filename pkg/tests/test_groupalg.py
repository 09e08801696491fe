import pytest

from lambdag.coeff import ONE, Q, T, q_power, t_power
from lambdag.groupalg import (
    AlgebraElement,
    act_affine,
    bar,
    constant_term,
    e,
    is_w_invariant,
    orbit_sum,
    parse_element,
)
from lambdag.rootsys import build_root_system
from lambdag.weyl import ExtAffineWeylElement, WeylElement


def test_monomial_arithmetic():
    f = e(1, 0) + e(0, 1)
    assert f * f == e(2, 0) + e(0, 2) + e(1, 1).scale(2)
    assert (f - f).is_zero()
    assert f**0 == AlgebraElement.one(2)
    assert (e(1, -1) * e(-1, 1)) == e(0, 0)


def test_scalar_coefficients():
    f = e(1).scale(T) + e(0).scale(Q)
    assert constant_term(f) == Q
    assert f.specialize(2)[(1,)] == q_power(-1)
    assert f.iota() == e(1).scale(t_power(-1)) + e(0).scale(q_power(-1))


def test_bar_negates_weights_only():
    f = e(2, -1).scale(T) + e(0, 0)
    assert bar(f) == e(-2, 1).scale(T) + e(0, 0)
    assert bar(bar(f)) == f


def test_parse_round_trip():
    f = parse_element("e[1,0] - 2*e[0,-1] + 3/2*e[0,0]")
    assert f[(0, -1)] == -2 * ONE
    assert str(f) == "-2*e[0,-1] + (3/2)*e[0,0] + e[1,0]"
    assert parse_element(str(e(1, 2) - e(0, 0))) == e(1, 2) - e(0, 0)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_element("e[1,0] + banana")
    with pytest.raises(ValueError):
        parse_element("e[1,0]", rank=3)


def test_orbit_sums():
    rs = build_root_system("B2")
    m = orbit_sum(rs, rs.root_to_weight(rs.theta_s)).element
    assert len(m.terms) == 4
    assert is_w_invariant(rs, m)
    assert not is_w_invariant(rs, e(1, 0))
    with pytest.raises(ValueError):
        orbit_sum(rs, (-1, 1))


def test_weyl_action_on_elements():
    rs = build_root_system("A2")
    s1 = WeylElement.from_word(rs, (1,))
    assert act_affine(s1, e(1, 0)) == e(-1, 1)


def test_translation_multiplies_by_q_powers():
    rs = build_root_system("A1")
    tau = ExtAffineWeylElement.tau(rs, (2,))
    assert act_affine(tau, e(3) + e(0)) == e(3).scale(q_power(6)) + e(0)


def test_json_shape():
    f = e(1, 0).scale(T)
    assert f.to_json() == [{"weight": [1, 0], "coeff": "t"}]
