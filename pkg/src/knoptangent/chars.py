"""Characters of irreducible modules: Freudenthal multiplicities and Weyl dimensions.

A weight μ of V(λ) is tracked by its depth, the vector of simple-root
coefficients of λ - μ.  The depth is exactly the T_ad-weight of a
μ-weight vector of the V(λ) summand, which is why the rest of the
package mostly talks about depths.
"""

import threading
from fractions import Fraction

from .rootsys import RootSystemError

__all__ = [
    "CharacterError",
    "factor_character",
    "character",
    "tad_character",
    "freudenthal_multiplicity",
    "weyl_dimension",
    "is_dominant",
    "tad_weight_of",
    "orbit_tangent_character",
    "quotient_character",
    "dim_orbit_check",
]


class CharacterError(ValueError):
    pass


_memo = {}
_memo_lock = threading.Lock()


def _form(factor, labels, c):
    """(ν, β) for ν with Dynkin labels ``labels`` and β = Σ c_j α_j."""
    d = factor.symmetrizer
    return sum(cj * dj * lj for cj, dj, lj in zip(c, d, labels))


def factor_character(factor, labels):
    """Multiplicities of V(λ) for one simple factor, keyed by depth.

    ``labels`` are the Dynkin labels of λ.  Returns a dict mapping depth
    tuples to positive multiplicities.
    """
    labels = tuple(int(x) for x in labels)
    if any(x < 0 for x in labels):
        raise CharacterError("highest weight %r is not dominant" % (labels,))
    key = (factor.cartan_type, factor.rank, labels)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        return hit

    r, a, d = factor.rank, factor.cartan, factor.symmetrizer
    roots = factor.positive_roots_simple
    if r == 0:
        return {(): 1}

    def labels_at(k):
        return [labels[j] - sum(k[i] * a[j][i] for i in range(r)) for j in range(r)]

    lam_rho = [d[i] * (labels[i] + 1) for i in range(r)]
    mult = {(0,) * r: 1}
    layer = [(0,) * r]
    while layer:
        cands = set()
        for k in layer:
            for i in range(r):
                nk = list(k)
                nk[i] += 1
                cands.add(tuple(nk))
        nxt = []
        for k in sorted(cands):
            denom = 2 * sum(k[i] * lam_rho[i] for i in range(r)) - sum(
                k[i] * k[j] * d[i] * a[i][j] for i in range(r) for j in range(r)
            )
            num = 0
            for c in roots:
                j = 1
                while True:
                    up = tuple(ki - j * ci for ki, ci in zip(k, c))
                    if min(up) < 0:
                        break
                    m = mult.get(up)
                    if m:
                        num += m * _form(factor, labels_at(up), c)
                    j += 1
            if num:
                val = Fraction(2 * num, denom)
                if val.denominator != 1 or val < 0:
                    raise CharacterError("Freudenthal recursion produced %s" % val)
                if val:
                    mult[k] = int(val)
                    nxt.append(k)
        layer = nxt
    with _memo_lock:
        _memo.setdefault(key, mult)
    return mult


def _split(datum, coeffs):
    out, start = [], 0
    for f in datum.components:
        out.append(tuple(coeffs[start:start + f.rank]))
        start += f.rank
    return out


def _factor_labels(datum, lam):
    out = []
    for pos, f in enumerate(datum.components):
        if f.rank == 0:
            out.append(())
            continue
        loc = datum.local(lam, pos)
        out.append(tuple(sum(x * y for x, y in zip(loc, co)) for co in f.simple_coroots))
    return out


def is_dominant(datum, lam):
    return datum.is_dominant(lam)


def _require_dominant(datum, lam):
    if not datum.is_dominant(lam):
        raise CharacterError("%r is not dominant" % (lam,))


def freudenthal_multiplicity(datum, lam, mu):
    """dim of the μ-weight space of V(λ)."""
    _require_dominant(datum, lam)
    depth = datum.root_lattice_coordinates(lam - mu)
    if depth is None or any(x < 0 for x in depth):
        return 0
    m = 1
    for f, labels, k in zip(datum.components, _factor_labels(datum, lam), _split(datum, depth)):
        if f.rank == 0:
            continue
        m *= factor_character(f, labels).get(k, 0)
        if not m:
            return 0
    return m


def tad_character(datum, lam):
    """T_ad-weights of V(λ) with multiplicities: {λ - μ: dim V(λ)_μ}."""
    _require_dominant(datum, lam)
    parts = [{(): 1}]
    for f, labels in zip(datum.components, _factor_labels(datum, lam)):
        if f.rank == 0:
            continue
        fc = factor_character(f, labels)
        parts = [
            {k1 + k2: m1 * m2 for k1, m1 in p.items() for k2, m2 in fc.items()}
            for p in parts
        ]
    out = {}
    for depth, m in parts[0].items():
        out[datum.from_simple_coordinates(depth)] = m
    return out


def character(datum, lam):
    """Weights of V(λ) with multiplicities."""
    return {lam - beta: m for beta, m in tad_character(datum, lam).items()}


def weyl_dimension(datum, lam):
    _require_dominant(datum, lam)
    num, den = 1, 1
    for f, labels in zip(datum.components, _factor_labels(datum, lam)):
        rho = [1] * f.rank
        for c in f.positive_roots_simple:
            num *= _form(f, [x + 1 for x in labels], c)
            den *= _form(f, rho, c)
    if num % den:
        raise CharacterError("Weyl dimension is not an integer")
    return num // den


def tad_weight_of(lam, mu):
    """T_ad-weight of a T-weight-μ vector in the V(λ) summand."""
    return lam - mu


def orbit_tangent_character(datum, E):
    """T_ad-weights of g·x0: |E| at zero, and 1 at each positive root seen by E."""
    E = list(E)
    out = {datum.zero: len(E)} if E else {}
    for beta in datum.positive_roots:
        if any(datum.pairing(beta, lam) for lam in E):
            out[beta] = 1
    return out


def quotient_character(datum, E):
    """T_ad-character of V/g·x0 where V = ⊕ V(λ)."""
    total = {}
    for lam in E:
        for beta, m in tad_character(datum, lam).items():
            total[beta] = total.get(beta, 0) + m
    for beta, m in orbit_tangent_character(datum, E).items():
        total[beta] = total.get(beta, 0) - m
        if total[beta] < 0:
            raise CharacterError("orbit tangent larger than V at %r" % (beta,))
    return {b: m for b, m in total.items() if m}


def dim_orbit_check(datum, E, dim_W=None):
    """Compare dim V with dim W and with dim g·x0 read off the characters."""
    E = list(E)
    dim_V = sum(weyl_dimension(datum, lam) for lam in E)
    orbit = sum(orbit_tangent_character(datum, E).values())
    report = {
        "dim_V": dim_V,
        "dim_orbit": orbit,
        "quotient_dim": dim_V - orbit,
        "dim_W": dim_W,
    }
    if dim_W is not None:
        report["consistent"] = orbit == dim_W
    return report
