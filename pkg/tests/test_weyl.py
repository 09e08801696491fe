import random

import pytest

from lambdag.rootsys import build_root_system
from lambdag.weyl import (
    AffineRoot,
    ExtAffineWeylElement,
    WeylElement,
    act,
    affine_chain,
    affine_inversion_set,
    check_debt,
    check_lemma_eps,
    check_lemma_formula,
    check_lemma_gt0,
    check_lemma_ht,
    check_lemma_main,
    inversion_set,
    iter_sample_elements,
    reduced_word,
    reduced_word_tau_theta,
    symmetric_decomposition_of_s_theta,
    weyl_group_elements,
)

from conftest import NON_SIMPLY_LACED, SMALL, SUITE


@pytest.mark.parametrize("label", ["A2", "B2", "G2", "A3", "B3"])
def test_enumeration_matches_order(label):
    rs = build_root_system(label)
    elems = weyl_group_elements(rs)
    assert len(elems) == rs.weyl_order
    assert len({w.rho_image for w in elems}) == rs.weyl_order


def test_length_equals_inversion_count():
    rs = build_root_system("B3")
    for w in weyl_group_elements(rs):
        assert len(inversion_set(w)) == w.length
        assert w.inverse() * w == WeylElement.identity(rs)


def test_longest_element_length():
    for label in ["A3", "B3", "G2", "D4"]:
        rs = build_root_system(label)
        w0 = WeylElement(rs, tuple(-x for x in rs.rho))
        assert w0.length == len(rs.positive_roots)


def test_reflection_in_theta_has_expected_length():
    for label in SUITE:
        rs = build_root_system(label)
        s = WeylElement.reflection(rs, rs.theta)
        coroot_height = sum(rs.theta_coroot)
        assert s.length == 2 * coroot_height - 1
        assert s.act_root(rs.theta) == tuple(-c for c in rs.theta)


def test_g2_symmetric_decomposition():
    rs = build_root_system("G2")
    ch = symmetric_decomposition_of_s_theta(rs)
    assert ch.word == (2, 1, 2, 1, 2)
    assert ch.p == 2
    assert ch.alpha(0) == rs.theta
    assert ch.short_indices() == [-1, 1]


@pytest.mark.parametrize("label", SUITE)
def test_chain_is_a_palindrome_ending_in_theta(label):
    rs = build_root_system(label)
    ch = symmetric_decomposition_of_s_theta(rs)
    assert ch.word == tuple(reversed(ch.word))
    assert len(ch.word) == 2 * ch.p + 1
    assert ch.alpha(0) == rs.theta
    assert WeylElement.from_word(rs, ch.word) == WeylElement.reflection(rs, rs.theta)


def test_tau_theta_words():
    assert reduced_word_tau_theta(build_root_system("B2")) == (0, 2, 1, 2)
    assert reduced_word_tau_theta(build_root_system("G2")) == (0, 2, 1, 2, 1, 2)


@pytest.mark.parametrize("label", SUITE)
def test_tau_theta_word_is_reduced(label):
    rs = build_root_system(label)
    word = reduced_word_tau_theta(rs)
    w = ExtAffineWeylElement.from_word(rs, word)
    assert w == ExtAffineWeylElement.tau(rs, rs.theta_coroot)
    assert w.length == len(word)
    chain = affine_chain(rs, word)
    assert set(chain) == affine_inversion_set(w)


def test_affine_reduced_word_round_trip():
    rs = build_root_system("C3")
    rng = random.Random(3)
    for _ in range(20):
        word = [rng.randint(0, 3) for _ in range(6)]
        w = ExtAffineWeylElement.from_word(rs, word)
        red = reduced_word(w)
        assert ExtAffineWeylElement.from_word(rs, red) == w
        assert len(red) == w.length


def test_affine_action_on_roots_and_weights():
    rs = build_root_system("A1")
    s0 = ExtAffineWeylElement.simple(rs, 0)
    assert act(s0, AffineRoot((-1,), 1)) == AffineRoot((1,), -1)
    # tau(lam) e^mu = q^{(lam, mu)} e^mu
    assert act(ExtAffineWeylElement.tau(rs, (1,)), (3,)) == (3, (3,))


@pytest.mark.parametrize("label", SMALL)
def test_lemma_formula_exhaustive(label):
    assert check_lemma_formula(build_root_system(label)) == []


def test_lemma_formula_sampled_on_f4():
    rs = build_root_system("F4")
    elems = list(iter_sample_elements(rs, random.Random(0), 30))
    assert check_lemma_formula(rs, elements=elems) == []


@pytest.mark.parametrize("label", SUITE + ["F4"])
def test_chain_lemmas(label):
    rs = build_root_system(label)
    assert check_lemma_gt0(rs) == []
    assert check_lemma_ht(rs) == []


@pytest.mark.parametrize("label", NON_SIMPLY_LACED + ["F4"])
def test_short_root_lemmas(label):
    rs = build_root_system(label)
    assert check_lemma_main(rs) == []
    assert check_lemma_eps(rs) == []
    assert check_debt(rs) == []


def test_debt_identity_needs_minus_i():
    """With the opposite sign the identity breaks, which pins the convention."""
    assert check_debt(build_root_system("B3"), sign=1) != []
