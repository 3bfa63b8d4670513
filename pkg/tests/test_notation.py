import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knoptangent.notation import NotationError, parse_weight, render_simple, render_weight
from knoptangent.rootsys import parse_group

MIXED = parse_group("C3 x A1 x C2 x T")


def test_ascii_and_unicode_agree():
    assert parse_weight(MIXED, "α1″+ω2") == parse_weight(MIXED, "a1''+w2")
    assert parse_weight(MIXED, "ω′+ε") == parse_weight(MIXED, "w1'+e")


def test_simple_root_rendering():
    beta = parse_weight(MIXED, "a1+2a2+a3")
    assert render_simple(MIXED, beta) == "α1+2α2+α3"
    assert render_weight(MIXED, beta) == "ω2"
    assert render_simple(MIXED, beta, unicode=False) == "a1+2a2+a3"


def test_sum_ranges():
    d = parse_group("C5")
    assert parse_weight(d, "2sum(a2..a4)+a5") == parse_weight(d, "2a2+2a3+2a4+a5")
    assert parse_weight(d, "sum(a3..a2)+a1") == parse_weight(d, "a1")


def test_rank_one_factor_has_no_index():
    d = parse_group("A1 x A1")
    assert render_simple(d, parse_weight(d, "2a1'")) == "2α′"


@pytest.mark.parametrize("bad", ["a9", "a1+", "w1'''", "2*", "x1", "sum(a1..)"])
def test_malformed_weights_raise(bad):
    with pytest.raises(NotationError):
        parse_weight(MIXED, bad)


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=7, max_size=7))
def test_render_parse_round_trip(coeffs):
    d = MIXED
    lam = d.zero
    basis = [d.fundamental(0, 1), d.fundamental(0, 2), d.fundamental(0, 3),
             d.fundamental(1, 1), d.fundamental(2, 1), d.fundamental(2, 2), d.torus_character(3)]
    for c, b in zip(coeffs, basis):
        lam = lam + c * b
    for uni in (True, False):
        assert parse_weight(d, render_weight(d, lam, unicode=uni)) == lam


@settings(max_examples=150, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=6, max_size=6))
def test_simple_root_round_trip(coeffs):
    d = MIXED
    beta = d.zero
    for c, a in zip(coeffs, d.simple_roots):
        beta = beta + c * a
    assert parse_weight(d, render_simple(d, beta)) == beta
