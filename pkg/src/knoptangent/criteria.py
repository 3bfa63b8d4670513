"""Combinatorial filters on candidate T_ad-weights.

All tests here work from the root datum and the basic weights E alone;
nothing needs an explicit model.  ``candidate_weights`` runs the filters
over the finite set Π + (R+ ∪ {0}) and keeps the full record of why each
candidate was dropped.
"""

from dataclasses import dataclass, field

from .chars import freudenthal_multiplicity, quotient_character
from .lattice import LatticeBasis, NotInLattice, decompose_over_E, nonneg_root_combination

__all__ = [
    "CriteriaError",
    "CandidateVerdict",
    "CHECK_ORDER",
    "codim_one",
    "necessary_conditions",
    "simple_root_shortcut",
    "candidate_weights",
    "extension_trichotomy",
    "extends_to_X0",
    "support_obstruction",
]

EXCLUDED = "excluded"
CERTIFIED = "simple-root-certified"
NEEDS_ORACLE = "needs-oracle"

CHECK_ORDER = (
    "nonzero",
    "root_cone",
    "lattice",
    "simple_plus_root",
    "positive_pairing",
    "kostant",
    "quotient",
    "support",
)
BASIC_CHECKS = CHECK_ORDER[:6]


class CriteriaError(ValueError):
    pass


@dataclass
class CandidateVerdict:
    beta: object
    coefficients: tuple = None
    checks: dict = field(default_factory=dict)
    status: str = NEEDS_ORACLE
    reason: str = None

    @property
    def excluded(self):
        return self.status == EXCLUDED

    def passed(self, names=BASIC_CHECKS):
        """True if every listed check that ran came out true."""
        return all(self.checks.get(n) is not False for n in names) and all(
            n in self.checks for n in names
        )


def _index(lam, E):
    for i, mu in enumerate(E):
        if mu == lam:
            return i
    raise CriteriaError("%r is not in E" % (lam,))


def codim_one(lam, E, datum):
    """Every simple coroot that sees λ also sees some other element of E."""
    i = _index(lam, E)
    others = [mu for j, mu in enumerate(E) if j != i]
    for co in datum.simple_coroots:
        if lam.dot(co) and not any(mu.dot(co) for mu in others):
            return False
    return True


def _check_independent(E, datum):
    try:
        return LatticeBasis(E, datum.coordinate_dim)
    except ValueError as exc:
        raise CriteriaError("E must be linearly independent: %s" % exc) from None


def support_obstruction(beta, E, datum):
    """Component-support test.

    If every simple α with β - α in R+ ∪ {0} is unusable, β cannot carry an
    invariant.  α is unusable when β - α is a root and X_{-(β-α)}·x0 is
    zero, or has a nonzero component in some V(λ) where β does not occur
    as a T_ad-weight (then X_α·v cannot be proportional to it).
    Returns the list of usable α (empty means excluded).
    """
    usable = []
    for alpha, rest in datum.sum_decompositions(beta):
        if rest.is_zero():
            usable.append(alpha)
            continue
        seen = [lam for lam in E if datum.pairing(rest, lam)]
        if not seen:
            continue
        if all(freudenthal_multiplicity(datum, lam, lam - beta) for lam in seen):
            usable.append(alpha)
    return usable


def necessary_conditions(beta, E, datum, extended=False, quotient=None):
    """Run the filters in order; the first failure excludes β.

    The basic filters are: β nonzero, β in ⟨Π⟩_N ∩ ⟨E⟩_Z, β in
    Π + (R+ ∪ {0}), a simple α with ⟨α∨,β⟩ > 0 and some λ with ⟨α∨,λ⟩ > 0
    and a_λ > 0, and the positive coefficients summing to at most two.
    With ``extended`` two more run: the weight must survive in the
    character of V/g·x0, and the component-support test.
    """
    E = list(E)
    lat = _check_independent(E, datum)
    v = CandidateVerdict(beta)

    def fail(name):
        v.checks[name] = False
        v.status = EXCLUDED
        v.reason = name
        return v

    if beta.is_zero():
        return fail("nonzero")
    v.checks["nonzero"] = True
    if not nonneg_root_combination(datum, beta):
        return fail("root_cone")
    v.checks["root_cone"] = True
    try:
        a = decompose_over_E(beta, lat)
    except NotInLattice:
        return fail("lattice")
    v.coefficients = a
    v.checks["lattice"] = True
    if not datum.sum_decompositions(beta):
        return fail("simple_plus_root")
    v.checks["simple_plus_root"] = True
    ok = False
    for co in datum.simple_coroots:
        if beta.dot(co) > 0 and any(
            lam.dot(co) > 0 and ai > 0 for lam, ai in zip(E, a)
        ):
            ok = True
            break
    if not ok:
        return fail("positive_pairing")
    v.checks["positive_pairing"] = True
    if sum(x for x in a if x > 0) > 2:
        return fail("kostant")
    v.checks["kostant"] = True
    if extended:
        q = quotient if quotient is not None else quotient_character(datum, E)
        if not q.get(beta):
            return fail("quotient")
        v.checks["quotient"] = True
        if not support_obstruction(beta, E, datum):
            return fail("support")
        v.checks["support"] = True
    return v


def simple_root_shortcut(verdict, E, datum):
    """Upgrade a surviving verdict using the codimension-one simple-root test."""
    if verdict.excluded:
        return verdict
    E = list(E)
    a = verdict.coefficients
    if a is None:
        raise CriteriaError("verdict has no coefficients; run necessary_conditions first")
    positive = [lam for lam, ai in zip(E, a) if ai > 0 and codim_one(lam, E, datum)]
    if not positive:
        verdict.status = NEEDS_ORACLE
        return verdict
    beta = verdict.beta
    if beta in datum.simple_roots and all(datum.pairing(beta, lam) for lam in positive):
        verdict.status = CERTIFIED
    else:
        verdict.status = EXCLUDED
        verdict.reason = "simple_root_shortcut"
    return verdict


def candidate_weights(E, datum, extended=True, shortcut=True):
    """Filter every element of Π + (R+ ∪ {0}); returns all verdicts.

    Order is by height, then coordinates, so survivors come out
    deterministically.
    """
    E = list(E)
    _check_independent(E, datum)
    cands = set()
    for alpha in datum.simple_roots:
        cands.add(alpha)
        for beta in datum.positive_roots:
            cands.add(alpha + beta)
    q = quotient_character(datum, E) if extended else None
    order = sorted(cands, key=lambda b: (datum.height(b), tuple(-c for c in datum.simple_root_coordinates(b))))
    out = []
    for beta in order:
        v = necessary_conditions(beta, E, datum, extended=extended, quotient=q)
        if shortcut:
            v = simple_root_shortcut(v, E, datum)
        out.append(v)
    return out


def extension_trichotomy(beta, E, lam, datum, witness=None):
    """Does a β-section extend over the codimension-one orbit of λ?

    Returns "extends", "fails", or "extends-iff-witness" when the
    coefficient is one and no witness callback is given.  ``witness`` is
    called with no arguments and must say whether the class has a
    representative inside V(λ).
    """
    E = list(E)
    i = _index(lam, E)
    if not codim_one(lam, E, datum):
        raise CriteriaError("%r does not have codimension one" % (lam,))
    a = decompose_over_E(beta, LatticeBasis(E, datum.coordinate_dim))[i]
    if a <= 0:
        return "extends"
    if a > 1:
        return "fails"
    if witness is None:
        return "extends-iff-witness"
    return "extends" if witness() else "fails"


def extends_to_X0(beta, E, datum, witness_for=None):
    """Conjunction of the trichotomy over all codimension-one λ.

    ``witness_for(lam)`` returns a zero-argument callback, or None.
    Returns "extends", "fails" or "extends-iff-witness".
    """
    E = list(E)
    verdicts = []
    for lam in E:
        if codim_one(lam, E, datum):
            w = witness_for(lam) if witness_for else None
            verdicts.append(extension_trichotomy(beta, E, lam, datum, w))
    if "fails" in verdicts:
        return "fails"
    if "extends-iff-witness" in verdicts:
        return "extends-iff-witness"
    return "extends"
