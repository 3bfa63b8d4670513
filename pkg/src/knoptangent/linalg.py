"""Exact sparse linear algebra over the rationals.

Vectors are dicts mapping an integer coordinate to a nonzero Fraction.
Everything here is deterministic: pivots are chosen as the smallest
coordinate present, so the echelon forms produced are canonical for a
given input order.
"""

from fractions import Fraction

__all__ = [
    "Subspace",
    "add_scaled",
    "scale",
    "nullspace",
    "solve_rational",
    "vector_from_dense",
]


def add_scaled(target, vec, coeff):
    """In place ``target += coeff * vec``; returns target."""
    if not coeff:
        return target
    for k, v in vec.items():
        new = target.get(k, 0) + coeff * v
        if new:
            target[k] = new
        else:
            target.pop(k, None)
    return target


def scale(vec, coeff):
    if not coeff:
        return {}
    return {k: coeff * v for k, v in vec.items()}


def vector_from_dense(values):
    return {i: Fraction(v) for i, v in enumerate(values) if v}


class Subspace:
    """A subspace kept in fully reduced echelon form.

    Each stored row has a pivot (its smallest coordinate) with coefficient
    one, and no other row has a nonzero entry in that pivot coordinate.
    With ``track=True`` every row also remembers its expression as a
    combination of the generators that were added, which gives both
    coordinates of members and linear relations among generators.
    """

    def __init__(self, vectors=(), track=False):
        self._rows = {}
        self._combos = {} if track else None
        self._ngens = 0
        self.relations = []
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self._rows)

    def __len__(self):
        return len(self._rows)

    @property
    def pivots(self):
        return sorted(self._rows)

    def basis(self):
        """Echelon basis, ordered by pivot."""
        return [dict(self._rows[p]) for p in sorted(self._rows)]

    def _reduce(self, vec, combo=None):
        vec = {k: Fraction(v) for k, v in vec.items() if v}
        if not self._rows:
            return vec, combo
        for p in sorted(set(vec) & set(self._rows)):
            c = vec.get(p)
            if not c:
                continue
            add_scaled(vec, self._rows[p], -c)
            if combo is not None:
                add_scaled(combo, self._combos[p], -c)
        return vec, combo

    def reduce(self, vec):
        """Residual of ``vec`` modulo the subspace (a linear map)."""
        return self._reduce(vec)[0]

    def contains(self, vec):
        return not self.reduce(vec)

    def add(self, vec):
        """Add a generator; return True if it enlarged the subspace.

        When tracking, a dependent generator records the linear relation
        it satisfies in ``self.relations``.
        """
        idx = self._ngens
        self._ngens += 1
        combo = {idx: Fraction(1)} if self._combos is not None else None
        res, combo = self._reduce(vec, combo)
        if not res:
            if combo is not None:
                self.relations.append(combo)
            return False
        p = min(res)
        inv = 1 / res[p]
        res = scale(res, inv)
        if combo is not None:
            combo = scale(combo, inv)
        for q, row in self._rows.items():
            c = row.get(p)
            if c:
                add_scaled(row, res, -c)
                if combo is not None:
                    add_scaled(self._combos[q], combo, -c)
        self._rows[p] = res
        if combo is not None:
            self._combos[p] = combo
        return True

    def coordinates(self, vec):
        """Express ``vec`` in the added generators, or None if outside.

        Requires tracking.  The answer is one particular solution; add
        any combination of ``relations`` for the others.
        """
        if self._combos is None:
            raise ValueError("coordinates need a tracking subspace")
        res, combo = self._reduce(vec, {})
        if res:
            return None
        return scale(combo, -1)


def nullspace(columns):
    """Basis of {x : sum_j x_j * columns[j] = 0}, one vector per dependent column."""
    sub = Subspace(track=True)
    for col in columns:
        sub.add(col)
    return sub.relations


def solve_rational(columns, target):
    """One solution x of sum_j x_j * columns[j] = target, or None."""
    sub = Subspace(track=True)
    for col in columns:
        sub.add(col)
    return sub.coordinates(target)
