"""Brute-force invariants of V/g·x0 under the stabilizer algebra of x0.

V = ⊕ V(λ) is built from explicit models, x0 is the sum of highest
weight vectors, and everything is graded by T_ad-weight: a vector of
weight μ in the V(λ) summand has T_ad-weight λ - μ, X_γ lowers the
T_ad-weight by γ and Cartan elements preserve it.  Each graded piece is
solved separately with exact rational linear algebra.
"""

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .chars import quotient_character
from .criteria import (
    CriteriaError,
    candidate_weights,
    codim_one,
    extension_trichotomy,
    necessary_conditions,
)
from .lattice import LatticeBasis, NotInLattice, decompose_over_E
from .linalg import Subspace, add_scaled, nullspace
from .modules import ModuleError, direct_sum, explicit_roots, format_vector, has_explicit_model, irreducible
from .notation import render_simple, render_weight

__all__ = [
    "OracleError",
    "OracleUnavailable",
    "Component",
    "AmbientSetup",
    "InvariantSlice",
    "TangentWeight",
    "TangentReport",
    "orbit_tangent",
    "stabilizer_algebra",
    "invariants_at_weight",
    "represented_in_component",
    "tangent_space",
    "oracle_available",
    "SCHEMA",
]

SCHEMA = "knoptangent.tangent/1"
LIE_ALGEBRA_CAVEAT = (
    "invariance is tested against the stabilizer Lie algebra; "
    "a disconnected stabilizer could cut the answer down further"
)


class OracleError(RuntimeError):
    pass


class OracleUnavailable(OracleError):
    pass


def oracle_available(datum):
    return all(has_explicit_model(f) for f in datum.components)


@dataclass
class Component:
    """One summand V(λ) of V, with the vector used for it in x0."""

    label: str
    weight: object
    module: object
    hw_vector: dict


class AmbientSetup:
    """V, x0 and the Lie algebra basis acting on V."""

    def __init__(self, datum, components, coefficients=None):
        if not oracle_available(datum):
            bad = [f.name for f in datum.components if not has_explicit_model(f)]
            raise OracleUnavailable("no explicit models for %s" % ", ".join(bad))
        self.datum = datum
        self.components = list(components)
        self.E = [c.weight for c in self.components]
        V, offsets = direct_sum([c.module for c in self.components])
        self.V = V
        self.offsets = offsets
        if coefficients is None:
            coefficients = [1] * len(self.components)
        self.coefficients = [Fraction(c) for c in coefficients]
        if any(c == 0 for c in self.coefficients):
            raise OracleError("x0 coefficients must be nonzero")

        self.owner = []
        self.tad = []
        self.hw = []
        x0 = {}
        for k, (c, off) in enumerate(zip(self.components, offsets)):
            for j in range(c.module.dim):
                self.owner.append(k)
                self.tad.append(c.weight - c.module.weights[j])
            hv = {off + j: Fraction(v) for j, v in c.hw_vector.items()}
            for j in hv:
                if self.tad[j] != datum.zero:
                    raise OracleError("component %s: vector is not of highest weight" % c.label)
            self.hw.append(hv)
            add_scaled(x0, hv, self.coefficients[k])
        self.x0 = x0

        # Lie algebra basis: Cartan coordinates, then root vectors
        self.g_basis = [("h", c) for c in range(datum.coordinate_dim)]
        self.g_shift = [datum.zero] * datum.coordinate_dim
        for beta in explicit_roots(datum):
            self.g_basis.append(("x", beta))
            self.g_shift.append(-beta)

        self.by_tad = {}
        for j, b in enumerate(self.tad):
            self.by_tad.setdefault(b, []).append(j)

        self._orbit = None
        self._stab = None

    @classmethod
    def from_weights(cls, datum, E, labels=None, coefficients=None):
        comps = []
        for i, lam in enumerate(E):
            try:
                mod = irreducible(datum, lam)
            except ModuleError as exc:
                raise OracleUnavailable(str(exc)) from None
            lab = labels[i] if labels else "λ%d" % (i + 1)
            comps.append(Component(lab, lam, mod, {mod.hw_index: Fraction(1)}))
        return cls(datum, comps, coefficients)

    @property
    def dim_g(self):
        return len(self.g_basis)

    def act(self, k, vec):
        kind, key = self.g_basis[k]
        if kind == "h":
            return self.V.apply_cartan(key, vec)
        return self.V.apply(key, vec)

    def act_element(self, elem, vec):
        """Apply a combination {basis index: coeff} of Lie algebra basis elements."""
        out = {}
        for k, c in elem.items():
            add_scaled(out, self.act(k, vec), c)
        return out

    def element_shift(self, elem):
        shifts = {self.g_shift[k] for k in elem}
        if len(shifts) != 1:
            raise OracleError("Lie algebra element is not homogeneous")
        return shifts.pop()

    def weight_of(self, vec):
        ws = {self.tad[j] for j in vec}
        if len(ws) != 1:
            raise OracleError("vector is not a T_ad-eigenvector")
        return ws.pop()

    def component_indices(self, k, beta):
        return [j for j in self.by_tad.get(beta, []) if self.owner[j] == k]

    def g_label(self, k):
        kind, key = self.g_basis[k]
        if kind == "h":
            return "H%d" % key
        return "X[%s]" % render_simple(self.datum, key)

    def format(self, vec, limit=12):
        return format_vector(self.V, vec, limit)


def orbit_tangent(setup):
    """g·x0 as a dict {T_ad-weight: Subspace}; computed once per setup."""
    if setup._orbit is None:
        spaces = {}
        for k in range(setup.dim_g):
            y = setup.act(k, setup.x0)
            if y:
                b = setup.weight_of(y)
                spaces.setdefault(b, Subspace()).add(y)
        setup._orbit = spaces
    return setup._orbit


def orbit_dimension(setup, x=None):
    if x is None:
        return sum(s.dim for s in orbit_tangent(setup).values())
    spaces = {}
    for k in range(setup.dim_g):
        y = setup.act(k, x)
        if y:
            # x need not be homogeneous here; use a single space
            spaces.setdefault(None, Subspace()).add(y)
    return sum(s.dim for s in spaces.values())


def stabilizer_algebra(setup):
    """Homogeneous basis of {z in g : z·x0 = 0}, as dicts over g_basis."""
    if setup._stab is None:
        groups = {}
        for k, s in enumerate(setup.g_shift):
            groups.setdefault(s, []).append(k)
        basis = []
        for s in sorted(groups, key=lambda w: w.coords):
            ks = groups[s]
            cols = [setup.act(k, setup.x0) for k in ks]
            for rel in nullspace(cols):
                basis.append({ks[i]: c for i, c in rel.items()})
        setup._stab = basis
    return setup._stab


@dataclass
class InvariantSlice:
    beta: object
    dim: int
    representatives: list
    solutions: list = field(default_factory=list)


def _space_basis(setup, beta):
    return [{j: Fraction(1)} for j in setup.by_tad.get(beta, [])]


def invariants_at_weight(setup, beta):
    """Weight-β part of (V/g·x0)^{g_x0}, with canonical representatives."""
    idx = setup.by_tad.get(beta, [])
    orbit = orbit_tangent(setup)
    W = orbit.get(beta, Subspace())
    if len(idx) == W.dim:
        return InvariantSlice(beta, 0, [], [])
    stab = stabilizer_algebra(setup)
    columns = []
    for j in idx:
        e = {j: Fraction(1)}
        col = {}
        for s_i, z in enumerate(stab):
            img = setup.act_element(z, e)
            if not img:
                continue
            tgt = orbit.get(beta + setup.element_shift(z))
            res = tgt.reduce(img) if tgt is not None else img
            stride = s_i * len(setup.tad)
            for r, c in res.items():
                col[stride + r] = c
        columns.append(col)
    sols = []
    for rel in nullspace(columns):
        sols.append({idx[i]: c for i, c in rel.items()})
    # vectors with zero column are solutions too; nullspace already returns them
    reps = Subspace()
    for v in sols:
        r = W.reduce(v)
        if r:
            reps.add(r)
    return InvariantSlice(beta, reps.dim, reps.basis(), sols)


def _intersect(a_basis, b_basis):
    """Basis of span(a) ∩ span(b)."""
    if not a_basis or not b_basis:
        return []
    cols = list(a_basis) + [{k: -c for k, c in v.items()} for v in b_basis]
    out = Subspace()
    for rel in nullspace(cols):
        vec = {}
        for i, c in rel.items():
            if i < len(a_basis):
                add_scaled(vec, a_basis[i], c)
        if vec:
            out.add(vec)
    return out.basis()


def represented_in_component(setup, v, lam_index):
    """Is [v] represented by a vector of the V(λ) summand?"""
    beta = setup.weight_of(v)
    W = orbit_tangent(setup).get(beta, Subspace())
    U = Subspace(W.basis())
    for j in setup.component_indices(lam_index, beta):
        U.add({j: Fraction(1)})
    return U.contains(v)


def _codim_one_explicit(setup, k):
    x = dict(setup.x0)
    for j in setup.hw[k]:
        x.pop(j, None)
    return orbit_dimension(setup, x) == orbit_dimension(setup) - 1


@dataclass
class TangentWeight:
    beta: object
    mult: int
    tier: str
    coefficients: tuple = None
    extends_per_lambda: dict = field(default_factory=dict)
    invariant_dim: int = None
    status: str = "confirmed"
    upper_bound: int = None
    representatives: list = field(default_factory=list)


@dataclass
class TangentReport:
    datum: object
    E: list
    labels: list
    weights: list
    tier: str
    d_W_expected: int = None
    expected: list = None
    verdict: str = "computed"
    complete: bool = True
    invariants: list = field(default_factory=list)
    rejected: list = field(default_factory=list)
    caveats: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def total(self):
        return sum(w.mult for w in self.weights)

    def weight_multiset(self):
        return {w.beta: w.mult for w in self.weights if w.mult}

    def to_json(self, unicode=True):
        d = self.datum
        lat = LatticeBasis(self.E, d.coordinate_dim)

        def e_coords(beta):
            try:
                a = decompose_over_E(beta, lat)
            except NotInLattice:
                return None
            return list(a)

        def e_render(a):
            if a is None:
                return None
            from .notation import render_combination

            return render_combination(list(zip(a, self.labels)))

        out = {
            "schema": SCHEMA,
            "group": d.name,
            "E": [
                {"label": l, "weight": render_weight(d, w, unicode), "coords": list(w)}
                for l, w in zip(self.labels, self.E)
            ],
            "tier": self.tier,
            "weights": [],
            "total": self.total,
            "d_W_expected": self.d_W_expected,
            "verdict": self.verdict,
            "complete": self.complete,
            "caveats": list(self.caveats),
        }
        for w in self.weights:
            a = e_coords(w.beta)
            out["weights"].append(
                {
                    "beta": render_simple(d, w.beta, unicode),
                    "coords": list(w.beta),
                    "E_coords": a,
                    "E_expression": e_render(a),
                    "mult": w.mult,
                    "tier": w.tier,
                    "status": w.status,
                    "invariant_dim": w.invariant_dim,
                    "upper_bound": w.upper_bound,
                    "extends_per_lambda": dict(w.extends_per_lambda),
                    "representatives": list(w.representatives),
                }
            )
        if self.expected is not None:
            out["expected"] = [render_simple(d, b, unicode) for b in self.expected]
        if self.invariants:
            out["invariants"] = [
                {"beta": render_simple(d, s.beta, unicode), "dim": s.dim} for s in self.invariants
            ]
        if self.rejected:
            out["rejected"] = [
                {"beta": render_simple(d, w.beta, unicode), "invariant_dim": w.invariant_dim,
                 "extends_per_lambda": dict(w.extends_per_lambda)}
                for w in self.rejected
            ]
        if self.notes:
            out["notes"] = self.notes
        return out


def _sorted_weights(datum, betas):
    return sorted(betas, key=lambda b: (datum.height(b), tuple(-c for c in datum.simple_root_coordinates(b))))


def _oracle_report(setup, labels, check_codim=True):
    datum, E = setup.datum, setup.E
    lat = LatticeBasis(E, datum.coordinate_dim)
    codim = [codim_one(lam, E, datum) for lam in E]
    if check_codim:
        for k, flag in enumerate(codim):
            if _codim_one_explicit(setup, k) != flag:
                raise OracleError("codimension-one test disagrees with orbit dimensions for %s" % labels[k])
    orbit = orbit_tangent(setup)
    slices, weights, dropped = [], [], []
    for beta in _sorted_weights(datum, setup.by_tad):
        sl = invariants_at_weight(setup, beta)
        if not sl.dim:
            continue
        slices.append(sl)
        try:
            a = decompose_over_E(beta, lat)
        except NotInLattice:
            # the torus {t : λ(t) = 1 for all λ in E} fixes x0 and acts on
            # this class by a nontrivial character, which g_x0 cannot see
            dropped.append(sl)
            continue
        W = orbit.get(beta, Subspace())
        S = Subspace(W.basis())
        for v in sl.representatives:
            S.add(v)
        ext = S.basis()
        per = {}
        for k, lam in enumerate(E):
            if not codim[k]:
                continue
            U = Subspace(W.basis())
            for j in setup.component_indices(k, beta):
                U.add({j: Fraction(1)})
            full = all(U.contains(v) for v in sl.representatives)
            verdict = extension_trichotomy(beta, E, lam, datum, witness=lambda: full)
            if a[k] == 1:
                ext = _intersect(ext, U.basis())
                inside = Subspace(W.basis())
                for v in ext:
                    inside.add(v)
                part = inside.dim - W.dim
                if 0 < part < sl.dim:
                    verdict = "extends on a %d-dimensional subspace" % part
            elif a[k] > 1:
                ext = W.basis()
            per[labels[k]] = verdict
        final = Subspace(W.basis())
        for v in ext:
            final.add(v)
        mult = final.dim - W.dim
        reps = []
        if mult:
            q = Subspace()
            for v in ext:
                r = W.reduce(v)
                if r:
                    q.add(r)
            reps = [setup.format(v) for v in q.basis()]
        weights.append(
            TangentWeight(beta, mult, "oracle", a, per, sl.dim, "confirmed", sl.dim, reps)
        )
    return slices, weights, dropped


def tangent_space(datum, E, labels=None, tier="auto", d_W=None, expected=None,
                  setup=None, coefficients=None, check_codim=True):
    """T_ad-weights of the tangent space at the fixed point.

    ``tier`` is "oracle", "character", "criteria" or "auto" (oracle when
    every factor has an explicit model, otherwise the character count,
    otherwise the criteria-only partial report).
    """
    E = list(E)
    labels = list(labels) if labels else ["λ%d" % (i + 1) for i in range(len(E))]
    try:
        LatticeBasis(E, datum.coordinate_dim)
    except ValueError as exc:
        raise CriteriaError("E must be linearly independent: %s" % exc) from None
    for lam in E:
        if not datum.is_dominant(lam):
            raise CriteriaError("%r is not dominant" % (lam,))
    if tier not in ("auto", "oracle", "character", "criteria"):
        raise ValueError("unknown tier %r" % tier)

    if tier == "oracle" or (tier == "auto" and (setup is not None or oracle_available(datum))):
        if setup is None:
            setup = AmbientSetup.from_weights(datum, E, labels, coefficients)
        slices, weights, dropped = _oracle_report(setup, labels, check_codim)
        rep = TangentReport(datum, E, labels, [w for w in weights if w.mult], "oracle",
                            d_W, expected, invariants=slices, caveats=[LIE_ALGEBRA_CAVEAT],
                            rejected=[w for w in weights if not w.mult])
        if dropped:
            rep.notes["outside_E_lattice"] = {render_simple(datum, s.beta): s.dim for s in dropped}
        rep.notes["dim_orbit"] = sum(s.dim for s in orbit_tangent(setup).values())
        rep.notes["dim_stabilizer"] = len(stabilizer_algebra(setup))
        rep.notes["dim_V"] = setup.V.dim
        for w in rep.weights:
            v = necessary_conditions(w.beta, E, datum)
            if v.excluded:
                raise OracleError("oracle weight %r fails the %s filter" % (w.beta, v.reason))
        _finish(rep)
        return rep

    q = quotient_character(datum, E)
    if tier in ("auto", "character") and d_W is not None and sum(q.values()) == d_W:
        # V/g·x0 is no bigger than the lower bound d_W, so it is the whole tangent space
        ws = [TangentWeight(b, m, "character", _coeffs(b, E, datum), {}, m, "confirmed", m)
              for b, m in ((b, q[b]) for b in _sorted_weights(datum, q))]
        rep = TangentReport(datum, E, labels, ws, "character", d_W, expected)
        rep.notes["quotient_dim"] = sum(q.values())
        _finish(rep)
        return rep
    if tier == "character":
        raise OracleUnavailable("dimension count does not settle this case")

    verdicts = candidate_weights(E, datum)
    ws = []
    for v in verdicts:
        if v.excluded:
            continue
        ub = q.get(v.beta, 0)
        if v.status == "simple-root-certified":
            ws.append(TangentWeight(v.beta, 1, "criteria", v.coefficients, {}, None, "certified", 1))
        else:
            ws.append(TangentWeight(v.beta, 0, "criteria", v.coefficients,
                                    {lab: "extends-iff-witness" for lab, lam in zip(labels, E)
                                     if codim_one(lam, E, datum) and v.coefficients[labels.index(lab)] == 1},
                                    None, "unconfirmed", ub))
    rep = TangentReport(datum, E, labels, ws, "criteria", d_W, expected, complete=False)
    rep.verdict = "criteria-tier only"
    rep.caveats.append("no explicit model for %s; candidates are not confirmed"
                       % ", ".join(f.name for f in datum.components if not has_explicit_model(f)))
    rep.notes["excluded"] = {
        render_simple(datum, v.beta): v.reason for v in verdicts if v.excluded
    }
    return rep


def _coeffs(beta, E, datum):
    try:
        return decompose_over_E(beta, LatticeBasis(E, datum.coordinate_dim))
    except NotInLattice:
        return None


def _finish(rep):
    if rep.expected is None and rep.d_W_expected is None:
        rep.verdict = "computed"
        return
    ok = True
    if rep.d_W_expected is not None and rep.total != rep.d_W_expected:
        ok = False
    if rep.expected is not None:
        want = {}
        for b in rep.expected:
            want[b] = want.get(b, 0) + 1
        if rep.weight_multiset() != want:
            ok = False
    rep.verdict = "confirmed" if ok else "mismatch"


def worker_count():
    try:
        return max(1, int(os.environ.get("KNOPTAN_WORKERS", "1")))
    except ValueError:
        return 1
