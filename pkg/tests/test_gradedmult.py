from itertools import combinations

import pytest

from lambdag.budget import BudgetExceeded
from lambdag.coeff import T, t_power
from lambdag.gradedmult import (
    GradedMultiplicity,
    NotAPolynomial,
    check_lemma_d,
    check_scprod_hsroot,
    decompose,
    exterior_character,
    gm_formula_theta,
    gm_formula_theta_s,
    gm_formula_zero,
    gm_via_macdonald,
    lemma_d_sum,
    ratio_route_check,
    special_weight,
)
from lambdag.macdonald import weyl_dimension
from lambdag.rootsys import build_root_system

from conftest import NON_SIMPLY_LACED, SUITE


def _brute_exterior(rs):
    """Weight/degree table of the exterior algebra by enumerating subsets of a basis."""
    basis = [(0,) * rs.rank] * rs.rank + [rs.root_to_weight(a) for a in rs.roots]
    table = {}
    for n in range(len(basis) + 1):
        for sub in combinations(range(len(basis)), n):
            w = tuple(sum(basis[i][j] for i in sub) for j in range(rs.rank))
            table[(w, n)] = table.get((w, n), 0) + 1
    return table


@pytest.mark.parametrize("label", ["A1", "A2", "B2"])
def test_exterior_character_by_brute_force(label):
    rs = build_root_system(label)
    assert exterior_character(rs).terms == _brute_exterior(rs)


@pytest.mark.parametrize("label", SUITE)
def test_exterior_character_invariants(label):
    ec = exterior_character(build_root_system(label))
    assert ec.check_invariants() == []


def test_a1():
    rs = build_root_system("A1")
    dec = decompose(exterior_character(rs))
    assert str(dec[(0,)]) == "1 + q^3"
    assert str(dec[(2,)]) == "q + q^2"
    assert set(dec) == {(0,), (2,)}


def test_b2_closed_forms():
    rs = build_root_system("B2")
    assert str(gm_formula_theta(rs)) == "q + q^2 + q^4 + 2*q^5 + q^6 + q^8 + q^9"
    assert gm_formula_theta(rs).value_at(1) == 8
    assert str(gm_formula_theta_s(rs)) == "q^3 + q^4 + q^6 + q^7"
    assert str(gm_formula_zero(rs)) == "1 + q^3 + q^7 + q^10"


def test_g2_zero():
    rs = build_root_system("G2")
    assert gm_formula_zero(rs).as_dict() == {0: 1, 3: 1, 11: 1, 14: 1}


def test_latex_and_json():
    gm = GradedMultiplicity.make((0, 2), {1: 1, 2: 1, 5: 2})
    assert gm.latex() == "q + q^{2} + 2q^{5}"
    assert gm.to_json() == {"lambda": [0, 2], "poly": {"1": 1, "2": 1, "5": 2}}


@pytest.mark.parametrize("label", SUITE)
def test_decomposition_agrees_with_closed_forms(label):
    rs = build_root_system(label)
    dec = decompose(exterior_character(rs))
    assert dec[special_weight(rs, "zero")] == gm_formula_zero(rs)
    assert dec[special_weight(rs, "theta")] == gm_formula_theta(rs)
    if not rs.simply_laced:
        assert dec[special_weight(rs, "theta-s")] == gm_formula_theta_s(rs)


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "B3", "C3"])
def test_peel_and_denominator_agree(label):
    ec = exterior_character(build_root_system(label))
    assert decompose(ec, "peel") == decompose(ec, "denominator")


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "C3"])
def test_decomposition_accounts_for_every_dimension(label):
    rs = build_root_system(label)
    dec = decompose(exterior_character(rs))
    assert sum(gm.value_at(1) * weyl_dimension(rs, lam) for lam, gm in dec.items()) == 2**rs.dim


@pytest.mark.parametrize("label", ["A3", "B3", "G2"])
def test_poincare_duality(label):
    rs = build_root_system(label)
    for gm in decompose(exterior_character(rs)).values():
        p = gm.as_dict()
        assert p == {rs.dim - d: c for d, c in p.items()}


@pytest.mark.parametrize("label", SUITE)
def test_theta_at_one(label):
    rs = build_root_system(label)
    assert gm_formula_theta(rs).value_at(1) == 2**rs.rank * rs.rank


@pytest.mark.parametrize("label", SUITE)
def test_macdonald_route(label):
    rs = build_root_system(label)
    which = ["zero", "theta"] + ([] if rs.simply_laced else ["theta-s"])
    formulas = {"zero": gm_formula_zero, "theta": gm_formula_theta, "theta-s": gm_formula_theta_s}
    for w in which:
        assert gm_via_macdonald(rs, w) == formulas[w](rs)
        assert ratio_route_check(rs, w) == []


@pytest.mark.parametrize("label", NON_SIMPLY_LACED)
def test_short_root_ratio(label):
    assert check_scprod_hsroot(build_root_system(label)) == []


@pytest.mark.parametrize("label", ["A3", "D4"])
def test_theta_s_rejected_when_simply_laced(label):
    rs = build_root_system(label)
    with pytest.raises(ValueError):
        gm_formula_theta_s(rs)
    with pytest.raises(ValueError):
        special_weight(rs, "theta-s")


def test_unknown_special_weight():
    with pytest.raises(ValueError):
        special_weight(build_root_system("A2"), "rho")


def test_decompose_budget():
    with pytest.raises(BudgetExceeded):
        exterior_character(build_root_system("E7"))


def test_not_a_polynomial_is_an_arithmetic_error():
    assert issubclass(NotAPolynomial, ArithmeticError)


def test_lemma_d_small_case():
    rs = build_root_system("B2")
    lhs, rhs = lemma_d_sum(rs, 1, 0)
    assert lhs == rhs == 2 * T + T * T + t_power(3)
    lhs, rhs = lemma_d_sum(rs, -2, 1, short=True)
    assert lhs == rhs == t_power(-1) + t_power(-3)


@pytest.mark.parametrize("label", SUITE + ["F4"])
def test_lemma_d(label):
    assert check_lemma_d(build_root_system(label)) == []


def test_lemma_d_rejects_zero_exponent():
    with pytest.raises(ValueError):
        lemma_d_sum(build_root_system("A2"), 0, 0)


@pytest.mark.slow
def test_f4_decomposition():
    rs = build_root_system("F4")
    ec = exterior_character(rs)
    dec = decompose(ec, "denominator")
    assert dec[special_weight(rs, "zero")] == gm_formula_zero(rs)
    assert dec[special_weight(rs, "theta")] == gm_formula_theta(rs)
    assert dec[special_weight(rs, "theta-s")] == gm_formula_theta_s(rs)
