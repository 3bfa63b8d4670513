import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knoptangent.catalog import instantiate
from knoptangent.lattice import (
    LatticeBasis,
    LatticeError,
    NotInLattice,
    cone_membership,
    decompose_over_E,
    hermite_normal_form,
    integer_kernel,
    intersect,
    nonneg_root_combination,
    private_support,
    root_lattice,
)
from knoptangent.notation import parse_weight
from knoptangent.rootsys import parse_group

LUNA = parse_group("A1 x A1")
LUNA_E = [parse_weight(LUNA, "2w1"), parse_weight(LUNA, "4w1+2w1'")]


def test_luna_decompositions():
    assert decompose_over_E(parse_weight(LUNA, "2a1'"), LUNA_E) == (-4, 2)
    assert decompose_over_E(parse_weight(LUNA, "a1"), LUNA_E) == (1, 0)


def test_elements_of_E_decompose_to_unit_vectors():
    inst = instantiate("K6", {"n": 3})
    for i, lam in enumerate(inst.E):
        assert decompose_over_E(lam, inst.E) == tuple(int(i == j) for j in range(len(inst.E)))


def test_not_in_lattice_distinguishes_rational_span():
    with pytest.raises(NotInLattice) as exc:
        decompose_over_E(parse_weight(LUNA, "w1'"), LUNA_E)
    assert exc.value.in_span
    d = parse_group("C2 x T")
    with pytest.raises(NotInLattice) as exc:
        decompose_over_E(parse_weight(d, "e"), [parse_weight(d, "w1")])
    assert not exc.value.in_span


def test_dependent_generators_rejected():
    d = parse_group("A2")
    with pytest.raises(LatticeError):
        LatticeBasis([parse_weight(d, "a1"), parse_weight(d, "2a1")])


def test_intersect_is_idempotent():
    d = parse_group("B3")
    a = LatticeBasis([d.simple_roots[0]], d.coordinate_dim)
    assert intersect(a, a) == a


def test_trivial_intersection_is_empty():
    d = parse_group("A2")
    a = LatticeBasis([parse_weight(d, "a1")])
    b = LatticeBasis([parse_weight(d, "a2")])
    assert intersect(a, b).rank == 0


def test_lattice_equality_ignores_basis_choice():
    d = parse_group("A3")
    a = LatticeBasis([parse_weight(d, "a1"), parse_weight(d, "a2")])
    b = LatticeBasis([parse_weight(d, "a1+a2"), parse_weight(d, "2a1+a2")])
    c = LatticeBasis([parse_weight(d, "a1+a2"), parse_weight(d, "2a1")])
    assert a == b
    assert a != c
    assert c.issubset(a)


def test_hermite_normal_form_and_kernel():
    rows = [(2, 4, 4), (-6, 6, 12), (10, 4, 16)]
    hnf = hermite_normal_form(rows)
    lat = LatticeBasis.spanned_by(rows)
    assert LatticeBasis([tuple(r) for r in hnf]) == lat
    k = integer_kernel([(1, 2), (2, 4), (0, 1)])
    assert len(k) == 1
    x = k[0]
    assert x[0] * 1 + x[1] * 2 == 0 and x[0] * 2 + x[1] * 4 + x[2] == 0


def test_cone_membership_outcomes():
    d = parse_group("C3")
    K = [parse_weight(d, "a1"), parse_weight(d, "a2+a3")]
    assert cone_membership(parse_weight(d, "2a1+a2+a3"), K).coefficients == (2, 1)
    assert cone_membership(parse_weight(d, "a2+a3-a1"), K).status == "negative"
    assert cone_membership(parse_weight(d, "a2"), K).status == "not-in-span"
    assert cone_membership(d.zero, K).member
    assert cone_membership(d.zero, K).coefficients == (0, 0)


def test_nonneg_root_combination_requires_zero_torus_part():
    d = parse_group("C2 x T")
    assert nonneg_root_combination(d, parse_weight(d, "a1+a2"))
    assert not nonneg_root_combination(d, parse_weight(d, "a1-a2"))
    assert not nonneg_root_combination(d, parse_weight(d, "a1+e"))


def test_private_support_k20():
    d = parse_group("C3 x T x GL2")
    K = [parse_weight(d, t) for t in ("a1", "a1'", "2a2+a3")]
    assert private_support(d, K)
    assert not private_support(d, K + [parse_weight(d, "a1+a1'")])


def test_k6_inequality_system_leaves_only_a2_plus_gamma():
    """Nonnegative simple-root combinations with a positive λ3-only coefficient."""
    from knoptangent.criteria import candidate_weights

    inst = instantiate("K6", {"n": 3})
    d = inst.datum
    K = [parse_weight(d, t) for t in ("a1", "a2", "a1'", "a2'", "a3")]
    for v in candidate_weights(inst.E, d, extended=False, shortcut=False):
        if v.excluded:
            continue
        a = v.coefficients
        codim = [k for k in range(6) if k != 2]
        if a[2] > 0 and all(a[k] <= 0 for k in codim):
            c = cone_membership(v.beta, K).coefficients
            assert c[0] == c[2] == c[3] == 0 and c[1] == c[4]


@settings(max_examples=120, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=6, max_size=6))
def test_decompose_round_trip(coeffs):
    inst = instantiate("K6", {"n": 3})
    beta = inst.datum.zero
    for c, lam in zip(coeffs, inst.E):
        beta = beta + c * lam
    assert decompose_over_E(beta, inst.E) == tuple(coeffs)


@settings(max_examples=100, deadline=None)
@given(
    st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=3),
    st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=3),
)
def test_intersection_lies_in_both(rows_a, rows_b):
    if not any(any(r) for r in rows_a) or not any(any(r) for r in rows_b):
        return
    a = LatticeBasis.spanned_by(rows_a, 4)
    b = LatticeBasis.spanned_by(rows_b, 4)
    c = intersect(a, b)
    assert c.issubset(a) and c.issubset(b)
    for g in c.generators:
        for lat in (a, b):
            coords = lat.coordinates(g)
            assert coords is not None and all(x.denominator == 1 for x in coords)


def test_root_lattice_contains_roots_not_fundamental_weights():
    d = parse_group("C3")
    L = root_lattice(d)
    assert all(L.contains(b) for b in d.positive_roots)
    assert not L.contains(d.fundamental(0, 1))
    assert L.contains(d.fundamental(0, 2))


def test_projected_lattice_gains_a_generator_for_sl3():
    inst = instantiate("K22", {"m": 2, "n": 3})
    d, restrict = inst.datum.derived()
    pE = [restrict(lam) for lam in inst.E]
    gens = LatticeBasis([x for x in pE if not x.is_zero()], d.coordinate_dim)
    want = [parse_weight(d, t) for t in ["a1", "a'", "a1''", "a2", "a1''+2a2''"]]
    assert intersect(gens, root_lattice(d)) == LatticeBasis(want, d.coordinate_dim)
