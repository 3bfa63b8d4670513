import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knoptangent.catalog import instantiate
from knoptangent.criteria import (
    CHECK_ORDER,
    CriteriaError,
    candidate_weights,
    codim_one,
    extends_to_X0,
    extension_trichotomy,
    necessary_conditions,
    simple_root_shortcut,
)
from knoptangent.notation import parse_weight
from knoptangent.rootsys import parse_group

LUNA = instantiate("luna")


def _survivors(inst, **kw):
    return [v for v in candidate_weights(inst.E, inst.datum, **kw) if not v.excluded]


def _ws(datum, *texts):
    return {parse_weight(datum, t) for t in texts}


def test_luna_codim_one():
    lam1, lam2 = LUNA.E
    assert codim_one(lam1, LUNA.E, LUNA.datum)
    assert not codim_one(lam2, LUNA.E, LUNA.datum)


def test_k6_codim_one_everywhere_but_third_weight():
    inst = instantiate("K6", {"n": 3})
    flags = [codim_one(lam, inst.E, inst.datum) for lam in inst.E]
    assert flags == [True, True, False, True, True, True]


def test_singleton_is_not_codim_one():
    d = parse_group("C2")
    lam = d.fundamental(0, 1)
    assert not codim_one(lam, [lam], d)


def test_codim_one_requires_member_of_E():
    with pytest.raises(CriteriaError):
        codim_one(parse_weight(LUNA.datum, "w1"), LUNA.E, LUNA.datum)


def test_k23_weight_outside_simple_plus_root():
    inst = instantiate("K23", {"m": 2, "n": 2})
    d = inst.datum
    beta3 = parse_weight(d, "a1+a2+a1''+a2''")
    v = necessary_conditions(beta3, inst.E, d)
    assert v.excluded and v.reason == "simple_plus_root"
    assert v.checks["lattice"] is True


def test_k8_derived_even_rank_weight_fails_coefficient_bound():
    inst = instantiate("K8", {"n": 6}, "derived")
    d = inst.datum
    beta1 = parse_weight(d, "a1'+a2'+a3'+2a4'+a5'")
    v = necessary_conditions(beta1, inst.E, d)
    assert v.coefficients == (1, 0, 0, -1, 0, 2)
    assert v.excluded and v.reason == "kostant"


def test_simple_root_passes_everything():
    inst = instantiate("K7")
    v = necessary_conditions(inst.datum.simple_roots[0], inst.E, inst.datum, extended=True)
    assert not v.excluded
    assert v.passed(CHECK_ORDER)


def test_excluded_verdicts_carry_reasons_and_certified_are_simple():
    for fid, p in [("K6", {"n": 3}), ("K8", {"n": 5}), ("K20", {"n": 3}), ("K23", {"m": 2, "n": 3})]:
        inst = instantiate(fid, p)
        for v in candidate_weights(inst.E, inst.datum):
            if v.excluded:
                assert v.reason in CHECK_ORDER or v.reason == "simple_root_shortcut"
            if v.status == "simple-root-certified":
                assert v.beta in inst.datum.simple_roots


def test_filters_run_in_order():
    inst = instantiate("K6", {"n": 3})
    d = inst.datum
    v = necessary_conditions(parse_weight(d, "a1-a2"), inst.E, d)
    assert v.reason == "root_cone" and list(v.checks) == ["nonzero", "root_cone"]
    assert necessary_conditions(d.zero, inst.E, d).reason == "nonzero"


def test_k7_survivors():
    inst = instantiate("K7")
    got = _survivors(inst)
    assert {v.beta for v in got} == _ws(inst.datum, "a1", "a2", "a1'", "a2'")


def test_k7_decided_by_shortcut_alone():
    """Every element of E has codimension one, so no survivor needs the oracle."""
    inst = instantiate("K7")
    assert all(codim_one(lam, inst.E, inst.datum) for lam in inst.E)
    for extended in (False, True):
        got = _survivors(inst, extended=extended)
        assert got and all(v.status == "simple-root-certified" for v in got)
        assert {v.beta for v in got} == set(inst.expected)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_k8_survivors(n):
    inst = instantiate("K8", {"n": n})
    assert {v.beta for v in _survivors(inst)} == _ws(inst.datum, "a1", "a2", "a1'", "a2'", "a3'")


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_k4_has_no_survivors(n):
    inst = instantiate("K4", {"n": n})
    assert _survivors(inst) == []


def test_k6_shortcut_outcomes():
    inst = instantiate("K6", {"n": 3})
    d = inst.datum
    v = simple_root_shortcut(necessary_conditions(parse_weight(d, "a1"), inst.E, d), inst.E, d)
    assert v.status == "simple-root-certified"
    v = simple_root_shortcut(necessary_conditions(parse_weight(d, "a2+a3"), inst.E, d), inst.E, d)
    assert v.coefficients[2] > 0
    assert all(a <= 0 for k, a in enumerate(v.coefficients) if k != 2)
    assert v.status == "needs-oracle"


def test_shortcut_excludes_non_simple_root():
    inst = instantiate("K7")
    d = inst.datum
    v = necessary_conditions(parse_weight(d, "a1+a2"), inst.E, d)
    assert not v.excluded
    assert simple_root_shortcut(v, inst.E, d).reason == "simple_root_shortcut"


def test_shortcut_needs_coefficients():
    d = LUNA.datum
    from knoptangent.criteria import CandidateVerdict

    with pytest.raises(CriteriaError):
        simple_root_shortcut(CandidateVerdict(d.simple_roots[0]), LUNA.E, d)


def test_dependent_E_rejected():
    d = parse_group("C2")
    with pytest.raises(CriteriaError):
        candidate_weights([d.fundamental(0, 1), 2 * d.fundamental(0, 1)], d)


def test_luna_trichotomy():
    d, E = LUNA.datum, LUNA.E
    lam1 = E[0]
    assert extension_trichotomy(parse_weight(d, "2a1"), E, lam1, d) == "fails"
    assert extension_trichotomy(parse_weight(d, "2a1'"), E, lam1, d) == "extends"
    alpha = parse_weight(d, "a1")
    assert extension_trichotomy(alpha, E, lam1, d) == "extends-iff-witness"
    assert extension_trichotomy(alpha, E, lam1, d, witness=lambda: True) == "extends"
    assert extension_trichotomy(alpha, E, lam1, d, witness=lambda: False) == "fails"


def test_trichotomy_rejects_non_codim_one():
    with pytest.raises(CriteriaError):
        extension_trichotomy(parse_weight(LUNA.datum, "a1"), LUNA.E, LUNA.E[1], LUNA.datum)


def test_extends_to_X0_is_a_conjunction():
    d, E = LUNA.datum, LUNA.E
    assert extends_to_X0(parse_weight(d, "2a1'"), E, d) == "extends"
    assert extends_to_X0(parse_weight(d, "2a1"), E, d) == "fails"
    assert extends_to_X0(parse_weight(d, "a1"), E, d, witness_for=lambda lam: (lambda: True)) == "extends"


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=5, max_size=5), st.integers(0, 4))
def test_trichotomy_partitions_by_coefficient(coeffs, which):
    inst = instantiate("K7")
    d = inst.datum
    beta = d.zero
    for c, lam in zip(coeffs, inst.E):
        beta = beta + c * lam
    lam = inst.E[which]
    got = extension_trichotomy(beta, inst.E, lam, d)
    a = coeffs[which]
    assert got == ("extends" if a <= 0 else "fails" if a > 1 else "extends-iff-witness")
