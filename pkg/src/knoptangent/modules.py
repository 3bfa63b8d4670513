"""Explicit matrix models of representations.

A module carries weight-labelled basis vectors and, for every root of a
factor with an explicit model (GL, SL and Sp), a sparse exact matrix for
the root operator X_β.  Cartan elements act diagonally through the
weights, so they are never stored.

Root operators are natural matrix units of the standard representation
and are propagated to tensor, exterior and symmetric powers by the
Leibniz rule.  For Sp(2n), with f_i = e_{2n+1-i} and Ω(e_i, f_j) = δ_ij:

* ``ε_i - ε_j``: e_j -> e_i, f_i -> -f_j
* ``-ε_k - ε_l``: e_l -> f_k, e_k -> f_l  (``-2ε_k``: e_k -> f_k)
* ``ε_k + ε_l``: f_l -> e_k, f_k -> e_l  (``2ε_k``: f_k -> e_k)

Matrices are stored by columns: ``ops[β][j]`` is the image of basis
vector ``j`` as a sparse dict.
"""

import threading
from fractions import Fraction
from itertools import combinations, combinations_with_replacement

from .chars import weyl_dimension
from .linalg import Subspace, add_scaled

__all__ = [
    "ModuleError",
    "ExplicitModule",
    "explicit_roots",
    "has_explicit_model",
    "standard_module",
    "character_module",
    "torus_character",
    "tensor",
    "tensor_all",
    "exterior_power",
    "symmetric_power",
    "dual",
    "direct_sum",
    "cyclic_submodule",
    "fundamental_module",
    "irreducible",
    "root_operator",
    "format_vector",
]

ONE = Fraction(1)


class ModuleError(ValueError):
    pass


def has_explicit_model(factor):
    return factor.is_torus or factor.gl_flag or factor.cartan_type in ("A", "C")


def explicit_roots(datum):
    """Roots (both signs) of the factors with explicit models."""
    out = []
    for beta in datum.positive_roots:
        pos = datum.factor_of(beta)
        if has_explicit_model(datum.components[pos]):
            out.extend([beta, -beta])
    return out


class ExplicitModule:
    """Weight-labelled basis plus sparse root-operator matrices."""

    def __init__(self, datum, labels, weights, ops, highest_weight=None, hw_index=None,
                 embedding=None, ambient=None):
        if len(labels) != len(weights):
            raise ModuleError("labels and weights differ in length")
        self.datum = datum
        self.labels = list(labels)
        self.weights = list(weights)
        self.ops = ops
        self.highest_weight = highest_weight
        self.hw_index = hw_index
        self.embedding = embedding
        self.ambient = ambient
        self._spaces = None

    @property
    def dim(self):
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    def weight_spaces(self):
        """{weight: [basis indices]}."""
        if self._spaces is None:
            sp = {}
            for i, w in enumerate(self.weights):
                sp.setdefault(w, []).append(i)
            self._spaces = sp
        return self._spaces

    def weight_multiplicities(self):
        return {w: len(ix) for w, ix in self.weight_spaces().items()}

    def _check_root(self, beta):
        if not self.datum.is_root(beta):
            raise ModuleError("%r is not a root" % (beta,))
        pos = self.datum.factor_of(beta)
        if not has_explicit_model(self.datum.components[pos]):
            raise ModuleError(
                "no explicit model for roots of %s" % self.datum.components[pos].name
            )

    def matrix(self, beta):
        self._check_root(beta)
        return self.ops.get(beta, {})

    def apply(self, beta, vec):
        """X_β · vec."""
        m = self.matrix(beta)
        out = {}
        for j, c in vec.items():
            col = m.get(j)
            if col:
                add_scaled(out, col, c)
        return out

    def apply_cartan(self, coord, vec):
        """The Cartan element reading coordinate ``coord`` of the weight."""
        out = {}
        for j, c in vec.items():
            s = self.weights[j][coord]
            if s:
                out[j] = c * s
        return out

    def e(self, i):
        return self.matrix(self.datum.simple_roots[i])

    def f(self, i):
        return self.matrix(-self.datum.simple_roots[i])

    def basis_vector(self, i):
        return {i: ONE}

    def to_ambient(self, vec):
        """Rewrite a vector of a submodule in the basis of the module it came from."""
        if self.embedding is None:
            return vec
        out = {}
        for j, c in vec.items():
            add_scaled(out, self.embedding[j], c)
        return self.ambient.to_ambient(out)

    def root_labels(self):
        return self.labels

    def __repr__(self):
        return "ExplicitModule(dim=%d, datum=%s)" % (self.dim, self.datum.name)


def _prime(k):
    return "'" * k


def standard_module(datum, pos):
    """The defining representation of the GL, SL or Sp factor at ``pos``."""
    f = datum.components[pos]
    k = datum.nonabelian_positions().index(pos) if not f.is_torus else 0
    ops = {}
    if f.gl_flag or (f.cartan_type == "A"):
        n = f.rank + 1
        labels = ["g%d%s" % (i + 1, _prime(k)) for i in range(n)]
        weights = [datum.eps(pos, i + 1) for i in range(n)]
        for p in range(n):
            for q in range(n):
                if p != q:
                    beta = weights[p] - weights[q]
                    ops[beta] = {q: {p: ONE}}
    elif f.cartan_type == "C":
        n = f.rank
        # e_1..e_n then f_n..f_1, so index(f_i) = 2n - i
        labels = ["e%d%s" % (i + 1, _prime(k)) for i in range(n)]
        labels += ["f%d%s" % (n - i, _prime(k)) for i in range(n)]
        ei = lambda i: i - 1
        fi = lambda i: 2 * n - i
        eps = [datum.eps(pos, i + 1) for i in range(n)]
        weights = eps + [-eps[n - 1 - i] for i in range(n)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i != j:
                    ops[eps[i - 1] - eps[j - 1]] = {ei(j): {ei(i): ONE}, fi(i): {fi(j): -ONE}}
        for kk in range(1, n + 1):
            for ll in range(kk, n + 1):
                s = eps[kk - 1] + eps[ll - 1]
                if kk == ll:
                    ops[-s] = {ei(kk): {fi(kk): ONE}}
                    ops[s] = {fi(kk): {ei(kk): ONE}}
                else:
                    ops[-s] = {ei(ll): {fi(kk): ONE}, ei(kk): {fi(ll): ONE}}
                    ops[s] = {fi(ll): {ei(kk): ONE}, fi(kk): {ei(ll): ONE}}
    else:
        raise ModuleError("no explicit model for %s" % f.name)
    for beta in ops:
        assert datum.is_root(beta), beta
    return ExplicitModule(datum, labels, weights, ops)


def character_module(datum, weight, label="1"):
    """One-dimensional module of the given weight (must pair to zero with every coroot)."""
    if any(datum.dynkin_labels(weight)):
        raise ModuleError("%r is not a character of the group" % (weight,))
    return ExplicitModule(datum, [label], [weight], {}, highest_weight=weight, hw_index=0)


def torus_character(datum, weight):
    return character_module(datum, weight)


def _keys(*mods):
    keys = set()
    for m in mods:
        keys.update(m.ops)
    return keys


def tensor(m1, m2):
    d2 = m2.dim
    labels = ["%s⊗%s" % (a, b) if a != "1" and b != "1" else (a if b == "1" else b)
              for a in m1.labels for b in m2.labels]
    weights = [w1 + w2 for w1 in m1.weights for w2 in m2.weights]
    ops = {}
    for beta in _keys(m1, m2):
        a, b = m1.ops.get(beta, {}), m2.ops.get(beta, {})
        mat = {}
        for i in range(m1.dim):
            ca = a.get(i)
            for j in range(d2):
                col = {}
                if ca:
                    for r, c in ca.items():
                        col[r * d2 + j] = c
                cb = b.get(j)
                if cb:
                    for s, c in cb.items():
                        key = i * d2 + s
                        new = col.get(key, 0) + c
                        if new:
                            col[key] = new
                        else:
                            col.pop(key, None)
                if col:
                    mat[i * d2 + j] = col
        if mat:
            ops[beta] = mat
    hw = None
    hwi = None
    if m1.hw_index is not None and m2.hw_index is not None:
        hw = m1.highest_weight + m2.highest_weight
        hwi = m1.hw_index * d2 + m2.hw_index
    return ExplicitModule(m1.datum, labels, weights, ops, highest_weight=hw, hw_index=hwi)


def tensor_all(mods):
    mods = list(mods)
    out = mods[0]
    for m in mods[1:]:
        out = tensor(out, m)
    return out


def exterior_power(m, k):
    if not 0 <= k <= m.dim:
        raise ModuleError("exterior power %d of a %d-dimensional module" % (k, m.dim))
    basis = list(combinations(range(m.dim), k))
    index = {s: i for i, s in enumerate(basis)}
    labels = ["∧".join(m.labels[i] for i in s) if s else "1" for s in basis]
    zero = m.datum.zero
    weights = []
    for s in basis:
        w = zero
        for i in s:
            w = w + m.weights[i]
        weights.append(w)
    ops = {}
    for beta, mat in m.ops.items():
        out = {}
        for col, s in enumerate(basis):
            img = {}
            for t, src in enumerate(s):
                for r, c in mat.get(src, {}).items():
                    if r in s and r != src:
                        continue
                    new = list(s)
                    new[t] = r
                    # sort with sign
                    sign = 1
                    arr = new
                    for a in range(len(arr)):
                        for b in range(len(arr) - 1 - a):
                            if arr[b] > arr[b + 1]:
                                arr[b], arr[b + 1] = arr[b + 1], arr[b]
                                sign = -sign
                    key = index[tuple(arr)]
                    val = img.get(key, 0) + sign * c
                    if val:
                        img[key] = val
                    else:
                        img.pop(key, None)
            if img:
                out[col] = img
        if out:
            ops[beta] = out
    return ExplicitModule(m.datum, labels, weights, ops)


def symmetric_power(m, k):
    if k < 0:
        raise ModuleError("negative symmetric power")
    basis = list(combinations_with_replacement(range(m.dim), k))
    index = {s: i for i, s in enumerate(basis)}

    def label(s):
        parts = []
        for i in sorted(set(s)):
            c = s.count(i)
            parts.append(m.labels[i] + ("^%d" % c if c > 1 else ""))
        return "·".join(parts) if parts else "1"

    labels = [label(s) for s in basis]
    zero = m.datum.zero
    weights = []
    for s in basis:
        w = zero
        for i in s:
            w = w + m.weights[i]
        weights.append(w)
    ops = {}
    for beta, mat in m.ops.items():
        out = {}
        for col, s in enumerate(basis):
            img = {}
            for src in sorted(set(s)):
                mult = s.count(src)
                for r, c in mat.get(src, {}).items():
                    new = list(s)
                    new.remove(src)
                    new.append(r)
                    key = index[tuple(sorted(new))]
                    val = img.get(key, 0) + mult * c
                    if val:
                        img[key] = val
                    else:
                        img.pop(key, None)
            if img:
                out[col] = img
        if out:
            ops[beta] = out
    hw = hwi = None
    if m.hw_index is not None:
        hw = k * m.highest_weight
        hwi = index[(m.hw_index,) * k]
    return ExplicitModule(m.datum, labels, weights, ops, highest_weight=hw, hw_index=hwi)


def dual(m):
    labels = [l[:-1] if l.endswith("*") else l + "*" for l in m.labels]
    weights = [-w for w in m.weights]
    ops = {}
    for beta, mat in m.ops.items():
        out = {}
        for i, col in mat.items():
            for j, c in col.items():
                out.setdefault(j, {})[i] = -c
        if out:
            ops[beta] = out
    return ExplicitModule(m.datum, labels, weights, ops)


def direct_sum(mods):
    """Direct sum; returns (module, offsets)."""
    mods = list(mods)
    labels, weights, offsets, ops = [], [], [], {}
    off = 0
    for m in mods:
        offsets.append(off)
        labels.extend(m.labels)
        weights.extend(m.weights)
        for beta, mat in m.ops.items():
            tgt = ops.setdefault(beta, {})
            for j, col in mat.items():
                tgt[j + off] = {r + off: c for r, c in col.items()}
        off += m.dim
    return ExplicitModule(mods[0].datum, labels, weights, ops), offsets


def _explicit_simple(datum):
    return [a for a in datum.simple_roots if has_explicit_model(datum.components[datum.factor_of(a)])]


def cyclic_submodule(m, v, check_dimension=True):
    """Submodule generated by a highest weight vector ``v``.

    The basis is the reduced echelon basis of each weight space, so the
    coordinates of a member are read off at the pivots.
    """
    datum = m.datum
    v = {k: Fraction(c) for k, c in v.items() if c}
    if not v:
        raise ModuleError("zero vector")
    wts = {m.weights[k] for k in v}
    if len(wts) != 1:
        raise ModuleError("generator is not a weight vector")
    (lam,) = wts
    simple = _explicit_simple(datum)
    for alpha in simple:
        if m.apply(alpha, v):
            raise ModuleError("generator is not a highest weight vector")
    if len(simple) != datum.rank:
        raise ModuleError("cyclic submodules need explicit models for every factor")

    spaces = {lam: Subspace([v])}
    queue = [v]
    while queue:
        u = queue.pop()
        for alpha in simple:
            x = m.apply(-alpha, u)
            if not x:
                continue
            w = m.weights[next(iter(x))]
            sp = spaces.setdefault(w, Subspace())
            if sp.add(x):
                queue.append(x)

    order = sorted(spaces, key=lambda w: (datum.height(lam - w), tuple(-c for c in (lam - w).coords)))
    vectors, weights, labels, where = [], [], [], {}
    for w in order:
        sp = spaces[w]
        for row in sp.basis():
            where[(w, min(row))] = len(vectors)
            vectors.append(row)
            weights.append(w)
            labels.append(_short_label(m, row))
    if check_dimension:
        expected = weyl_dimension(datum, lam)
        if expected != len(vectors):
            raise ModuleError(
                "cyclic submodule has dimension %d, Weyl formula gives %d" % (len(vectors), expected)
            )

    ops = {}
    for beta in _keys(m):
        mat = {}
        for j, vec in enumerate(vectors):
            img = m.apply(beta, vec)
            if not img:
                continue
            w = m.weights[next(iter(img))]
            sp = spaces.get(w)
            col = {}
            check = {}
            for p in sp.pivots:
                c = img.get(p)
                if c:
                    col[where[(w, p)]] = c
                    add_scaled(check, vectors[where[(w, p)]], c)
            if check != img:
                raise ModuleError("submodule is not stable under %r" % (beta,))
            mat[j] = col
        if mat:
            ops[beta] = mat
    return ExplicitModule(datum, labels, weights, ops, highest_weight=lam, hw_index=0,
                          embedding=vectors, ambient=m)


def _short_label(m, vec):
    items = sorted(vec.items())
    if len(items) == 1 and items[0][1] == 1:
        return m.labels[items[0][0]]
    return format_vector(m, vec)


def format_vector(m, vec, limit=None):
    """Human-readable linear combination of basis labels."""
    parts = []
    for k, c in sorted(vec.items()):
        lab = m.labels[k]
        if c == 1:
            s = lab
        elif c == -1:
            s = "-" + lab
        else:
            s = "%s·%s" % (c, lab)
        parts.append(s)
    if limit and len(parts) > limit:
        parts = parts[:limit] + ["…"]
    txt = "+".join(parts).replace("+-", "-")
    return txt or "0"


_irr_memo = {}
_irr_lock = threading.Lock()


def fundamental_module(datum, pos, i):
    """Explicit model of V(ω_i) for the factor at ``pos``."""
    f = datum.components[pos]
    std = standard_module(datum, pos)
    ext = exterior_power(std, i)
    hw = combinations(range(std.dim), i).__next__()
    hwi = 0
    assert ext.labels[hwi] == "∧".join(std.labels[k] for k in hw) or i == 0
    if f.cartan_type == "C" and i >= 2:
        return cyclic_submodule(ext, {hwi: ONE})
    ext.highest_weight = ext.weights[hwi]
    ext.hw_index = hwi
    return ext


def _factor_irreducible(datum, pos, local):
    f = datum.components[pos]
    if f.is_torus:
        w = datum._embed(pos, local)
        return character_module(datum, w, "1")
    if not has_explicit_model(f):
        raise ModuleError("no explicit model for %s" % f.name)
    shift = None
    if f.gl_flag:
        n = len(local)
        labels = [local[i] - local[i + 1] for i in range(n - 1)]
        shift = local[-1]
    else:
        labels = [sum(x * y for x, y in zip(local, co)) for co in f.simple_coroots]
    if any(c < 0 for c in labels):
        raise ModuleError("highest weight is not dominant")
    parts = []
    for i, c in enumerate(labels, start=1):
        if c:
            fm = fundamental_module(datum, pos, i)
            parts.append(fm if c == 1 else symmetric_power(fm, c))
    if shift:
        det = datum._embed(pos, [shift] * len(local))
        parts.append(character_module(datum, det, "det^%d" % shift if shift != 1 else "det"))
    if not parts:
        return character_module(datum, datum.zero, "1")
    mod = tensor_all(parts)
    nz = [(i, c) for i, c in enumerate(labels, start=1) if c]
    # a single fundamental, or a symmetric power of the standard module, is already irreducible
    single = len(nz) == 1 and (nz[0][1] == 1 or nz[0][0] == 1)
    if not single:
        mod = cyclic_submodule(mod, {mod.hw_index: ONE})
    return mod


def irreducible(datum, lam):
    """Explicit model of V(λ), built factor by factor and cross-checked with the Weyl formula."""
    key = (datum, lam)
    with _irr_lock:
        hit = _irr_memo.get(key)
    if hit is not None:
        return hit
    if not datum.is_dominant(lam):
        raise ModuleError("%r is not dominant" % (lam,))
    parts = []
    for pos, f in enumerate(datum.components):
        loc = datum.local(lam, pos)
        if f.is_torus and not any(loc):
            continue
        if not f.is_torus and not any(loc):
            continue
        parts.append(_factor_irreducible(datum, pos, loc))
    if not parts:
        mod = character_module(datum, datum.zero, "1")
    else:
        mod = tensor_all(parts)
    if mod.highest_weight != lam:
        raise ModuleError("built module has highest weight %r, wanted %r" % (mod.highest_weight, lam))
    if mod.dim != weyl_dimension(datum, lam):
        raise ModuleError("explicit model of dimension %d disagrees with the Weyl formula" % mod.dim)
    with _irr_lock:
        _irr_memo.setdefault(key, mod)
    return mod


def root_operator(m, beta):
    """Sparse matrix (by columns) of X_β on ``m``."""
    return m.matrix(beta)
