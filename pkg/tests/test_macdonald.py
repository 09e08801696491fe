import pytest

from lambdag.budget import BudgetExceeded
from lambdag.coeff import ONE, Q, q_power
from lambdag.gradedmult import dominant_multiplicities, scprod_hsroot
from lambdag.groupalg import AlgebraElement, e, is_w_invariant, orbit_sum
from lambdag.macdonald import (
    dominant_weights_below,
    dominant_weights_up_to_height,
    linear_extension,
    macdonald_poly,
    weyl_character,
    weyl_dimension,
)
from lambdag.rootsys import build_root_system, dominance_leq, weyl_orbit
from lambdag.scalar import macdonald_product

from conftest import NON_SIMPLY_LACED, SMALL, SUITE


def _low_weights(rs):
    return dominant_weights_up_to_height(rs, sum(rs.theta))


@pytest.mark.parametrize("label", SMALL)
def test_k0_gives_orbit_sums(label):
    rs = build_root_system(label)
    for lam in _low_weights(rs):
        assert macdonald_poly(rs, lam, 0).expansion == orbit_sum(rs, lam).element


@pytest.mark.parametrize("label", SMALL)
def test_k1_gives_weyl_characters(label):
    rs = build_root_system(label)
    for lam in _low_weights(rs):
        assert macdonald_poly(rs, lam, 1).expansion == weyl_character(rs, lam)


@pytest.mark.parametrize("label", SUITE + ["F4"])
def test_weyl_character_matches_freudenthal(label):
    rs = build_root_system(label)
    for lam in [rs.root_to_weight(rs.theta), rs.rho]:
        if label == "F4" and lam == rs.rho:
            continue
        chi = weyl_character(rs, lam)
        assert is_w_invariant(rs, chi)
        for mu, mult in dominant_multiplicities(rs, lam).items():
            assert chi[mu] == mult * ONE
        assert sum(int(str(c)) for c in chi.terms.values()) == weyl_dimension(rs, lam)


@pytest.mark.parametrize("label", SUITE)
def test_adjoint_character(label):
    rs = build_root_system(label)
    chi = weyl_character(rs, rs.root_to_weight(rs.theta))
    want = AlgebraElement.zero(rs.rank) + e(*(0,) * rs.rank).scale(rs.rank)
    for b in rs.roots:
        want = want + e(*rs.root_to_weight(b))
    assert chi == want


def test_dimensions():
    assert weyl_dimension(build_root_system("G2"), (1, 0)) == 7
    assert weyl_dimension(build_root_system("F4"), (0, 0, 0, 1)) in (26, 52)
    assert weyl_dimension(build_root_system("E6"), (1, 0, 0, 0, 0, 0)) == 27
    assert weyl_dimension(build_root_system("B3"), (1, 1, 1)) == 2**9


@pytest.mark.parametrize("k", [1, 2, 3])
def test_a1_rogers_coefficient(k):
    """P_2 = m_2 + (1 - u)(1 + q)/(1 - q u) m_0 with u = q^k."""
    rs = build_root_system("A1")
    u = q_power(k)
    want = (ONE - u) * (ONE + Q) / (ONE - Q * u)
    assert macdonald_poly(rs, (2,), k).coefficients == {(0,): want}


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_orthogonality_at_k2(label):
    rs = build_root_system(label)
    lams = _low_weights(rs)
    polys = {lam: macdonald_poly(rs, lam, 2).expansion for lam in lams}
    for i, a in enumerate(lams):
        for b in lams[:i]:
            assert not macdonald_product(rs, polys[a], polys[b], 2)


@pytest.mark.parametrize("label", ["B2", "C3"])
def test_triangularity(label):
    rs = build_root_system(label)
    for lam in _low_weights(rs):
        p = macdonald_poly(rs, lam, 2)
        assert p.expansion[lam] == ONE
        for mu in p.coefficients:
            assert mu != lam and dominance_leq(rs, mu, lam)
        assert is_w_invariant(rs, p.expansion)


@pytest.mark.parametrize("label", NON_SIMPLY_LACED)
def test_theta_s_at_k1_is_orbit_sum_plus_short_rank(label):
    rs = build_root_system(label)
    ths = rs.root_to_weight(rs.theta_s)
    p = macdonald_poly(rs, ths, 1)
    r_s = rs.exponent_data.r_s
    assert p.expansion == orbit_sum(rs, ths).element + e(*(0,) * rs.rank).scale(r_s)


@pytest.mark.parametrize("label", NON_SIMPLY_LACED)
def test_theta_s_at_k2(label):
    """At k = 2 the constant coefficient is minus the ratio <m_theta_s, 1>/<1, 1>."""
    rs = build_root_system(label)
    ths = rs.root_to_weight(rs.theta_s)
    p = macdonald_poly(rs, ths, 2)
    zero = (0,) * rs.rank
    assert set(p.coefficients) == {zero}
    assert p.coefficients[zero] == -scprod_hsroot(rs).specialize(2)


def test_b2_theta_s_k2_value():
    rs = build_root_system("B2")
    c = macdonald_poly(rs, (1, 0), 2).coefficients[(0, 0)]
    den = sum((Q**i for i in range(1, 7)), ONE)
    assert c == ONE + Q**3 / den


def test_dominant_weights_below():
    rs = build_root_system("A2")
    assert set(dominant_weights_below(rs, (2, 2))) == {(0, 0), (1, 1), (3, 0), (0, 3), (2, 2)}
    rs = build_root_system("C3")
    th = rs.root_to_weight(rs.theta)
    below = dominant_weights_below(rs, th)
    assert below[-1] == th
    assert all(dominance_leq(rs, mu, th) for mu in below)


def test_linear_extension_refines_dominance():
    rs = build_root_system("B3")
    ws = dominant_weights_below(rs, (2, 0, 2))
    order = linear_extension(rs, ws)
    for i, a in enumerate(order):
        for b in order[i + 1:]:
            assert not dominance_leq(rs, b, a) or a == b


def test_non_dominant_input_is_rejected():
    rs = build_root_system("A2")
    with pytest.raises(ValueError):
        macdonald_poly(rs, (-1, 1), 1)
    with pytest.raises(ValueError):
        weyl_character(rs, (1, -1))


def test_budget_on_weyl_group():
    with pytest.raises(BudgetExceeded):
        weyl_character(build_root_system("E8"), (0,) * 7 + (1,))


def test_orbit_size_of_rho_images():
    rs = build_root_system("D4")
    assert len(weyl_orbit(rs, rs.rho)) == rs.weyl_order
