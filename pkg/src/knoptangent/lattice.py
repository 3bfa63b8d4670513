"""Integer lattices inside the weight lattice.

Intersections come from the integer kernel of the stacked generator
matrix; both are computed by unimodular row reduction.  Lattices are
compared by mutual membership, never by comparing bases.
"""

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Subspace, solve_rational
from .rootsys import Weight

__all__ = [
    "LatticeBasis",
    "LatticeError",
    "NotInLattice",
    "ConeResult",
    "hermite_normal_form",
    "integer_kernel",
    "intersect",
    "root_lattice",
    "decompose_over_E",
    "nonneg_root_combination",
    "cone_membership",
    "private_support",
    "support",
]


class LatticeError(ValueError):
    pass


class NotInLattice(LatticeError):
    """β is not an integer combination; ``in_span`` tells whether it is a rational one."""

    def __init__(self, message, in_span, rational=None):
        super().__init__(message)
        self.in_span = in_span
        self.rational = rational


def _row_reduce(rows, track):
    """Unimodular row reduction to Hermite form.

    Returns (echelon rows, transform rows, rank); the first ``rank``
    rows are the nonzero Hermite rows and, when tracking, transform rows
    past ``rank`` span the integer kernel.
    """
    a = [list(r) for r in rows]
    m = len(a)
    u = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if a[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(a[i][c]))
            if piv != r:
                a[r], a[piv] = a[piv], a[r]
                if track:
                    u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if r < m and a[r][c]:
            if a[r][c] < 0:
                a[r] = [-x for x in a[r]]
                if track:
                    u[r] = [-x for x in u[r]]
            for i in range(r):
                q = a[i][c] // a[r][c]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if track:
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
    return a, u, r


def hermite_normal_form(rows):
    """Nonzero rows of the row-style Hermite normal form of the lattice spanned by ``rows``."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    a, _, r = _row_reduce(rows, False)
    return [tuple(x) for x in a[:r]]


def integer_kernel(rows):
    """Z-basis of {x in Z^m : sum_i x_i rows[i] = 0}."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    a, u, r = _row_reduce(rows, True)
    kern = [tuple(u[i]) for i in range(r, len(rows))]
    return [tuple(x) for x in hermite_normal_form(kern)] if kern else []


def _rational_rank(vectors):
    sub = Subspace()
    for v in vectors:
        sub.add({i: x for i, x in enumerate(v) if x})
    return sub.dim


class LatticeBasis:
    """A lattice given by Q-linearly independent generators."""

    def __init__(self, generators, dim=None):
        gens = [g if isinstance(g, Weight) else Weight(g) for g in generators]
        if dim is None:
            if not gens:
                raise LatticeError("cannot infer the ambient dimension of an empty basis")
            dim = len(gens[0])
        if any(len(g) != dim for g in gens):
            raise LatticeError("generators of different lengths")
        if _rational_rank([g.coords for g in gens]) != len(gens):
            raise LatticeError("generators are linearly dependent")
        self.generators = tuple(gens)
        self.dim = dim
        self._hnf = hermite_normal_form([g.coords for g in gens]) if gens else []

    @classmethod
    def spanned_by(cls, vectors, dim=None):
        """Lattice generated by arbitrary (possibly dependent) integer vectors."""
        vecs = [tuple(v) for v in vectors]
        if dim is None:
            dim = len(vecs[0])
        return cls([Weight(r) for r in hermite_normal_form(vecs)], dim)

    @property
    def rank(self):
        return len(self.generators)

    def canonical(self):
        """Hermite-reduced basis as Weights."""
        return [Weight(r) for r in self._hnf]

    def contains(self, v):
        v = list(v)
        for row in self._hnf:
            c = next(i for i, x in enumerate(row) if x)
            if v[c] % row[c]:
                return False
            q = v[c] // row[c]
            if q:
                v = [x - q * y for x, y in zip(v, row)]
        return not any(v)

    def __contains__(self, v):
        return self.contains(v)

    def __eq__(self, other):
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.rank == other.rank
            and all(other.contains(g) for g in self.generators)
            and all(self.contains(g) for g in other.generators)
        )

    def __hash__(self):
        return hash((self.dim, tuple(self._hnf)))

    def issubset(self, other):
        return all(other.contains(g) for g in self.generators)

    def coordinates(self, v):
        """Rational coordinates over the generators, or None outside the span."""
        cols = [{i: Fraction(x) for i, x in enumerate(g) if x} for g in self.generators]
        sol = solve_rational(cols, {i: Fraction(x) for i, x in enumerate(v) if x})
        if sol is None:
            return None
        return tuple(sol.get(j, Fraction(0)) for j in range(self.rank))

    def __repr__(self):
        return "LatticeBasis(%s)" % [list(g) for g in self.generators]


def intersect(span_a, span_b):
    """Basis (Hermite-reduced) of the intersection of two lattices."""
    if span_a.dim != span_b.dim:
        raise LatticeError("lattices in different ambient dimensions")
    p = span_a.rank
    rows = [g.coords for g in span_a.generators] + [(-g).coords for g in span_b.generators]
    if not rows:
        return LatticeBasis([], span_a.dim)
    kern = integer_kernel(rows)
    elems = []
    for x in kern:
        v = [0] * span_a.dim
        for xi, g in zip(x[:p], span_a.generators):
            if xi:
                v = [a + xi * b for a, b in zip(v, g)]
        elems.append(v)
    elems = [e for e in elems if any(e)]
    if not elems:
        return LatticeBasis([], span_a.dim)
    return LatticeBasis.spanned_by(elems, span_a.dim)


def root_lattice(datum):
    return LatticeBasis(datum.simple_roots, datum.coordinate_dim)


def decompose_over_E(beta, E):
    """The integer vector (a_λ) with β = Σ a_λ λ.

    Raises NotInLattice when β is outside ⟨E⟩_Z; the exception says
    whether β was at least in the rational span.
    """
    lat = E if isinstance(E, LatticeBasis) else LatticeBasis(E, len(beta))
    coeffs = lat.coordinates(beta)
    if coeffs is None:
        raise NotInLattice("not in the span of E", in_span=False)
    if any(c.denominator != 1 for c in coeffs):
        raise NotInLattice("not an integer combination of E", in_span=True, rational=coeffs)
    return tuple(int(c) for c in coeffs)


def nonneg_root_combination(datum, beta):
    """True iff β is a nonnegative integer combination of simple roots."""
    c = datum.root_lattice_coordinates(beta)
    return c is not None and all(x >= 0 for x in c)


@dataclass(frozen=True)
class ConeResult:
    status: str  # member | negative | not-integral | not-in-span
    coefficients: tuple = None

    @property
    def member(self):
        return self.status == "member"


def cone_membership(beta, K):
    """Is β in ⟨K⟩_N?  Distinguishes the ways it can fail."""
    lat = K if isinstance(K, LatticeBasis) else LatticeBasis(K, len(beta))
    coeffs = lat.coordinates(beta)
    if coeffs is None:
        return ConeResult("not-in-span")
    if any(c.denominator != 1 for c in coeffs):
        return ConeResult("not-integral", coeffs)
    ints = tuple(int(c) for c in coeffs)
    if any(c < 0 for c in ints):
        return ConeResult("negative", ints)
    return ConeResult("member", ints)


def support(datum, beta):
    """Indices of simple roots with nonzero coefficient in β."""
    c = datum.simple_root_coordinates(beta)
    if c is None:
        raise LatticeError("%r is not in the span of the roots" % (beta,))
    return frozenset(i for i, x in enumerate(c) if x)


def private_support(datum, K):
    """Each k in K has a simple root in its support that no other element uses.

    When this holds and K lies in the nonnegative root cone, an element
    of ⟨K⟩_Z that is a nonnegative combination of simple roots is a
    nonnegative combination of K.
    """
    sups = [support(datum, k) for k in K]
    for i, s in enumerate(sups):
        others = set().union(*(t for j, t in enumerate(sups) if j != i)) if len(sups) > 1 else set()
        if not (s - others):
            return False
    return True
