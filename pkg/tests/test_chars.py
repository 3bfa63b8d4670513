import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knoptangent.catalog import instantiate
from knoptangent.chars import (
    CharacterError,
    character,
    dim_orbit_check,
    freudenthal_multiplicity,
    quotient_character,
    tad_character,
    tad_weight_of,
    weyl_dimension,
)
from knoptangent.notation import parse_weight
from knoptangent.rootsys import parse_group


def test_b4_spin_multiplicity_vanishes():
    d = parse_group("B4")
    lam = parse_weight(d, "w4")
    assert freudenthal_multiplicity(d, lam, parse_weight(d, "w4-2(a1+a2+a3+a4)")) == 0


def test_d5_half_spin_multiplicity_vanishes():
    d = parse_group("D5")
    lam = parse_weight(d, "w5")
    beta2 = parse_weight(d, "2a1+2a2+2a3+a4+a5")
    assert freudenthal_multiplicity(d, lam, lam - beta2) == 0


def test_d5_half_spin_is_minuscule():
    d = parse_group("D5")
    ch = character(d, parse_weight(d, "w5"))
    assert len(ch) == 16 and set(ch.values()) == {1}


@pytest.mark.parametrize("group,lam,dim", [
    ("G2", "w1", 7), ("G2", "w2", 14), ("E6", "w1", 27), ("E6", "w2", 78), ("E7", "w7", 56),
    ("F4", "w4", 26), ("B3", "w3", 8), ("B4", "w4", 16), ("D5", "w5", 16), ("D4", "w2", 28),
    ("C4", "w2", 27), ("C3", "w3", 14), ("A3", "w1+w3", 15), ("A1", "4w1", 5),
])
def test_weyl_dimensions(group, lam, dim):
    d = parse_group(group)
    assert weyl_dimension(d, parse_weight(d, lam)) == dim


@pytest.mark.parametrize("n", range(1, 7))
def test_symplectic_standard_dimension(n):
    d = parse_group("C%d" % n)
    assert weyl_dimension(d, d.fundamental(0, 1)) == 2 * n
    if n >= 2:
        assert weyl_dimension(d, d.fundamental(0, 2)) == 2 * n * n - n - 1


def test_highest_weight_has_multiplicity_one():
    d = parse_group("C3 x GL2 x T")
    lam = parse_weight(d, "w1+2w3+w1'+e")
    assert freudenthal_multiplicity(d, lam, lam) == 1


def test_torus_part_must_match():
    d = parse_group("C2 x T")
    lam = parse_weight(d, "w1+e")
    assert freudenthal_multiplicity(d, lam, parse_weight(d, "w1")) == 0


def test_non_dominant_rejected():
    d = parse_group("A2")
    with pytest.raises(CharacterError):
        freudenthal_multiplicity(d, parse_weight(d, "w1-w2"), d.zero)


def test_luna_tad_weight():
    d = parse_group("A1 x A1")
    lam2 = parse_weight(d, "4w1+2w1'")
    mu = parse_weight(d, "4w1-2w1'")
    assert tad_weight_of(lam2, mu) == parse_weight(d, "2a1'")
    assert tad_character(d, lam2)[parse_weight(d, "2a1'")] == 1
    assert tad_weight_of(lam2, lam2).is_zero()


def test_k5_tad_weight_of_e2_tensor_g2():
    d = parse_group("C3 x GL2")
    lam1 = parse_weight(d, "w1+w1'")
    mu = parse_weight(d, "e2+e2'")
    assert tad_weight_of(lam1, mu) == parse_weight(d, "e1-e2+e1'-e2'")
    assert tad_weight_of(lam1, mu) == parse_weight(d, "a1+a1'")


@pytest.mark.parametrize("group,lam", [
    ("B3", "w1+w3"), ("C3", "w1+w2"), ("G2", "w1+w2"), ("A3", "w1+w2"), ("D4", "w1+w3"), ("F4", "w4"),
])
def test_character_sums_to_weyl_dimension(group, lam):
    d = parse_group(group)
    lam = parse_weight(d, lam)
    assert sum(character(d, lam).values()) == weyl_dimension(d, lam)


@pytest.mark.parametrize("group,lam", [("B3", "w1+w3"), ("C3", "2w2"), ("G2", "w1+w2"), ("A3", "w1+2w2")])
def test_multiplicity_is_invariant_under_longest_element(group, lam):
    d = parse_group(group)
    lam = parse_weight(d, lam)
    for mu, m in character(d, lam).items():
        assert freudenthal_multiplicity(d, lam, d.w0(mu)) == m


@pytest.mark.parametrize("n", range(1, 5))
def test_k4_quotient_is_zero(n):
    inst = instantiate("K4", {"n": n})
    rep = dim_orbit_check(inst.datum, inst.E, inst.dim_W)
    assert rep["dim_V"] == 2 * n and rep["quotient_dim"] == 0 and rep["consistent"]


@pytest.mark.parametrize("n", range(3, 7))
def test_k9_quotient_is_one(n):
    inst = instantiate("K9", {"n": n})
    rep = dim_orbit_check(inst.datum, inst.E, inst.dim_W)
    assert rep["dim_V"] == n + 1 and rep["quotient_dim"] == 1 and rep["consistent"]


def test_k11_quotient_is_one():
    inst = instantiate("K11")
    rep = dim_orbit_check(inst.datum, inst.E, inst.dim_W)
    assert (rep["dim_V"], rep["dim_W"], rep["quotient_dim"]) == (9, 8, 1)


def test_quotient_character_of_luna():
    inst = instantiate("luna")
    q = quotient_character(inst.datum, inst.E)
    assert sum(q.values()) == 18 - 4
    assert q[parse_weight(inst.datum, "2a1'")] == 1


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 1))
def test_b3_character_total_matches_weyl(a, b, c):
    d = parse_group("B3")
    lam = a * d.fundamental(0, 1) + b * d.fundamental(0, 2) + c * d.fundamental(0, 3)
    assert sum(character(d, lam).values()) == weyl_dimension(d, lam)
