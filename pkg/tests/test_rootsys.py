import pytest

from lambdag.rootsys import (
    UnknownRootSystem,
    build_root_system,
    dominance_leq,
    dual_partition,
    heights,
    weyl_orbit,
)

COUNTS = {
    "A1": (2, 2), "A2": (6, 6), "A3": (12, 24), "B2": (8, 8), "B3": (18, 48),
    "C3": (18, 48), "D4": (24, 192), "G2": (12, 12), "F4": (48, 1152),
    "E6": (72, 51840), "E7": (126, 2903040), "E8": (240, 696729600),
}

EXPONENTS = {
    "A1": (1,), "A2": (1, 2), "A3": (1, 2, 3), "B2": (1, 3), "B3": (1, 3, 5),
    "C3": (1, 3, 5), "D4": (1, 3, 3, 5), "G2": (1, 5), "F4": (1, 5, 7, 11),
    "E6": (1, 4, 5, 7, 8, 11),
}


@pytest.mark.parametrize("label", sorted(COUNTS))
def test_root_counts_and_weyl_order(label):
    rs = build_root_system(label)
    n_roots, order = COUNTS[label]
    assert len(rs.roots) == n_roots
    assert len(rs.positive_roots) == n_roots // 2
    assert rs.weyl_order == order


@pytest.mark.parametrize("label", sorted(EXPONENTS))
def test_exponents(label):
    rs = build_root_system(label)
    assert rs.exponent_data.exponents == EXPONENTS[label]


def test_g2_data():
    rs = build_root_system("G2")
    assert rs.theta == (3, 2)
    assert rs.theta_s == (2, 1)
    assert rs.lambda_ratio == 3
    assert heights(rs, rs.theta) == (5, 2, 3)
    assert (rs.L, rs.S) == (2, 3)
    assert rs.exponent_data.short_exponents == (3,)


def test_b2_data():
    rs = build_root_system("B2")
    assert rs.theta == (1, 2)
    assert rs.theta_s == (1, 1)
    assert rs.lambda_ratio == 2
    assert rs.exponent_data.exponents == (1, 3)
    assert rs.exponent_data.short_exponents == (2,)
    assert heights(rs, rs.theta_s) == (2, 1, 1)
    assert rs.root_to_weight(rs.theta) == (0, 2)
    assert rs.root_to_weight(rs.theta_s) == (1, 0)


def test_short_roots_have_norm_two():
    for label in ["B3", "C3", "G2", "F4"]:
        rs = build_root_system(label)
        assert min(rs.norm2(b) for b in rs.roots) == 2
        assert max(rs.norm2(b) for b in rs.roots) == 2 * rs.lambda_ratio


def test_simply_laced_has_no_ratio():
    rs = build_root_system("D4")
    assert rs.simply_laced
    assert rs.lambda_ratio is None
    assert rs.theta_s is None


def test_label_spellings():
    assert build_root_system("e_6").label == "E6"
    assert build_root_system(" b3 ").label == "B3"


@pytest.mark.parametrize("label", ["H3", "A0", "B1", "D3", "E9", "F3", "G3", "nonsense"])
def test_unknown_labels(label):
    with pytest.raises(UnknownRootSystem):
        build_root_system(label)


def test_cartan_rows_are_simple_roots_as_weights():
    rs = build_root_system("C3")
    for i in range(1, 4):
        assert rs.root_to_weight(rs.simple_root(i)) == rs.cartan[i - 1]


def test_theta_is_dominant_and_highest():
    for label in ["A3", "B3", "C3", "D4", "G2", "F4"]:
        rs = build_root_system(label)
        th = rs.root_to_weight(rs.theta)
        assert rs.is_dominant(th)
        for b in rs.positive_roots:
            assert dominance_leq(rs, rs.root_to_weight(b), th)


def test_orbits():
    rs = build_root_system("G2")
    assert len(weyl_orbit(rs, rs.root_to_weight(rs.theta))) == 6
    assert len(weyl_orbit(rs, rs.rho)) == 12
    rs = build_root_system("A2")
    assert weyl_orbit(rs, (1, 0)) == {(1, 0), (-1, 1), (0, -1)}


def test_to_dominant():
    rs = build_root_system("B3")
    for b in rs.roots:
        mu = rs.root_to_weight(b)
        dom, _ = rs.to_dominant(mu)
        assert rs.is_dominant(dom)
        assert dom in (rs.root_to_weight(rs.theta), rs.root_to_weight(rs.theta_s))


def test_dual_partition():
    assert dual_partition({1: 2, 2: 1, 3: 1}) == [1, 3]
    assert dual_partition([3, 2, 1]) == [1, 2, 3]


def test_rho_pairs_to_one_with_simple_coroots():
    rs = build_root_system("F4")
    for i in range(1, 5):
        assert rs.pair_weight_coroot(rs.rho, rs.simple_root(i)) == 1
