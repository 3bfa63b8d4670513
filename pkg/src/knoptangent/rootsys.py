"""Root data for products of simple factors, GL(n) factors and tori.

Coordinates are integral throughout.  Each factor owns a block of the
coordinate lattice:

* ``GL(n)``: ε-coordinates, ``n`` of them; ``ω_i = ε_1 + ... + ε_i``.
* ``C_n``: ε-coordinates, ``n`` of them (the symplectic weight lattice).
* ``A_n`` (SL), ``B_n``, ``D_n``, ``E_n``, ``F_4``, ``G_2``: Dynkin labels,
  i.e. coordinates in the basis of fundamental weights.  This keeps spin
  weights integral; ``ε_i`` is still available for A, B and D through
  the usual expressions in fundamental weights.
* torus ``T``: one coordinate, the character ``z -> z``.

Everything is derived from the Bourbaki Cartan matrix together with the
realisation of simple roots and simple coroots in these coordinates.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

__all__ = [
    "Weight",
    "SimpleFactor",
    "RootDatum",
    "RootSystemError",
    "cartan_matrix",
    "build_root_datum",
    "parse_group",
]


class RootSystemError(ValueError):
    pass


class Weight:
    """Integer vector in the coordinate lattice of a root datum."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        object.__setattr__(self, "coords", tuple(int(c) for c in coords))

    def __setattr__(self, name, value):
        raise AttributeError("Weight is immutable")

    @classmethod
    def zero(cls, n):
        return cls((0,) * n)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        return isinstance(other, Weight) and self.coords == other.coords

    def __lt__(self, other):
        return self.coords < other.coords

    def __hash__(self):
        return hash(("Weight", self.coords))

    def _check(self, other):
        if len(other.coords) != len(self.coords):
            raise RootSystemError("weights live in lattices of different rank")

    def __add__(self, other):
        self._check(other)
        return Weight(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other):
        self._check(other)
        return Weight(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self):
        return Weight(-a for a in self.coords)

    def __mul__(self, k):
        return Weight(k * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self.coords)

    def dot(self, covector):
        return sum(a * b for a, b in zip(self.coords, covector))

    def __repr__(self):
        return "Weight(%r)" % (list(self.coords),)


def _chain(n):
    m = [[0] * n for _ in range(n)]
    for i in range(n):
        m[i][i] = 2
        if i + 1 < n:
            m[i][i + 1] = m[i + 1][i] = -1
    return m


def cartan_matrix(cartan_type, rank):
    """Bourbaki Cartan matrix, ``A[i][j] = <α_i^∨, α_j>``."""
    t, n = cartan_type, rank
    if t == "A" and n >= 1:
        return _chain(n)
    if t == "B" and n >= 2:
        m = _chain(n)
        m[n - 1][n - 2] = -2
        return m
    if t == "C" and n >= 1:
        m = _chain(n)
        if n >= 2:
            m[n - 2][n - 1] = -2
        return m
    if t == "D" and n >= 3:
        m = _chain(n - 1) + [[0] * n]
        for row in m:
            row.extend([0] * (n - len(row)))
        m[n - 1][n - 1] = 2
        m[n - 3][n - 1] = m[n - 1][n - 3] = -1
        return m
    if t == "E" and n in (6, 7, 8):
        m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(1, 3), (2, 4)] + [(k, k + 1) for k in range(3, n)]
        for i, j in edges:
            m[i - 1][j - 1] = m[j - 1][i - 1] = -1
        return m
    if t == "F" and n == 4:
        m = _chain(4)
        m[2][1] = -2
        return m
    if t == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    raise RootSystemError("unsupported Cartan type %s%d" % (t, n))


def _symmetrizer(a):
    """Positive integers d with d_i A_ij = d_j A_ji, short roots having d = 1."""
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if a[i][j] and d[j] is None:
                    d[j] = d[i] * a[i][j] / a[j][i]
                    stack.append(j)
    lo = min(d)
    d = [x / lo for x in d]
    return [int(x) for x in d]


@dataclass(frozen=True)
class SimpleFactor:
    """One factor of the group.

    ``cartan_type`` is one of A-G, or ``"T"`` for a one-dimensional
    torus.  ``GL(n)`` is type A of rank ``n - 1`` with ``gl_flag`` set.
    """

    cartan_type: str
    rank: int
    gl_flag: bool = False

    def __post_init__(self):
        if self.cartan_type == "T":
            if self.rank != 0:
                raise RootSystemError("a torus factor has rank 0")
        elif self.gl_flag:
            if self.cartan_type != "A" or self.rank < 0:
                raise RootSystemError("GL factors are of type A")
        else:
            cartan_matrix(self.cartan_type, self.rank)

    @property
    def name(self):
        if self.cartan_type == "T":
            return "T"
        if self.gl_flag:
            return "GL%d" % (self.rank + 1)
        return "%s%d" % (self.cartan_type, self.rank)

    @property
    def is_torus(self):
        return self.cartan_type == "T"

    @property
    def uses_eps_coordinates(self):
        return self.gl_flag or self.cartan_type == "C"

    @cached_property
    def coordinate_dim(self):
        if self.is_torus:
            return 1
        if self.gl_flag:
            return self.rank + 1
        return self.rank

    @cached_property
    def cartan(self):
        if self.rank == 0:
            return []
        return cartan_matrix(self.cartan_type, self.rank)

    @cached_property
    def symmetrizer(self):
        return _symmetrizer(self.cartan) if self.rank else []

    @cached_property
    def simple_roots(self):
        """Local coordinates of α_1, ..., α_r."""
        n, r = self.coordinate_dim, self.rank
        roots = []
        for j in range(r):
            v = [0] * n
            if self.uses_eps_coordinates:
                if self.cartan_type == "C" and j == r - 1:
                    v[j] = 2
                else:
                    v[j], v[j + 1] = 1, -1
            else:
                for i in range(r):
                    v[i] = self.cartan[i][j]
            roots.append(tuple(v))
        return roots

    @cached_property
    def simple_coroots(self):
        """Local covectors of α_1^∨, ..., α_r^∨."""
        n, r = self.coordinate_dim, self.rank
        cos = []
        for i in range(r):
            v = [0] * n
            if self.uses_eps_coordinates:
                if self.cartan_type == "C" and i == r - 1:
                    v[i] = 1
                else:
                    v[i], v[i + 1] = 1, -1
            else:
                v[i] = 1
            cos.append(tuple(v))
        for i in range(r):
            for j in range(r):
                got = sum(a * b for a, b in zip(cos[i], self.simple_roots[j]))
                assert got == self.cartan[i][j]
        return cos

    def fundamental_weight(self, i):
        """Local coordinates of ω_i; ω_0 = 0 and for GL(n) ω_n = det."""
        n = self.coordinate_dim
        top = self.rank + 1 if self.gl_flag else self.rank
        if not 0 <= i <= top or self.is_torus:
            raise RootSystemError("%s has no fundamental weight ω%d" % (self.name, i))
        v = [0] * n
        if self.uses_eps_coordinates:
            for k in range(i):
                v[k] = 1
        elif i:
            v[i - 1] = 1
        return tuple(v)

    def eps(self, i):
        """Local coordinates of ε_i for the classical types."""
        n, r = self.coordinate_dim, self.rank
        t = self.cartan_type
        if self.uses_eps_coordinates:
            if not 1 <= i <= n:
                raise RootSystemError("ε%d out of range for %s" % (i, self.name))
            v = [0] * n
            v[i - 1] = 1
            return tuple(v)
        w = self.fundamental_weight

        def sub(x, y):
            return tuple(a - b for a, b in zip(x, y))

        def add(x, y):
            return tuple(a + b for a, b in zip(x, y))

        if t == "A" and 1 <= i <= r + 1:
            hi = w(i) if i <= r else (0,) * n
            return sub(hi, w(i - 1))
        if t == "B" and 1 <= i <= r:
            if i < r:
                return sub(w(i), w(i - 1))
            return sub(add(w(r), w(r)), w(r - 1))
        if t == "D" and 1 <= i <= r:
            if i <= r - 2:
                return sub(w(i), w(i - 1))
            if i == r - 1:
                return sub(add(w(r - 1), w(r)), w(r - 2))
            return sub(w(r), w(r - 1))
        raise RootSystemError("ε%d is not available for %s" % (i, self.name))

    @cached_property
    def positive_roots_simple(self):
        """Positive roots as coefficient vectors over the simple roots."""
        r, a = self.rank, self.cartan
        if r == 0:
            return []
        simple = [tuple(1 if k == i else 0 for k in range(r)) for i in range(r)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(r):
                    # α_i-string through β: p down-steps, pairing gives q
                    p = 0
                    down = list(beta)
                    while True:
                        down[i] -= 1
                        if tuple(down) in found:
                            p += 1
                        else:
                            break
                    pair = sum(beta[j] * a[i][j] for j in range(r))
                    if p - pair > 0:
                        up = list(beta)
                        up[i] += 1
                        up = tuple(up)
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
            layer = nxt
        return sorted(found, key=lambda c: (sum(c), tuple(-x for x in c)))

    def local_root(self, c):
        n = self.coordinate_dim
        v = [0] * n
        for ci, alpha in zip(c, self.simple_roots):
            if ci:
                for k in range(n):
                    v[k] += ci * alpha[k]
        return tuple(v)

    def local_coroot(self, c):
        """Coroot covector of the root with simple coordinates ``c`` (any sign)."""
        a, d, r = self.cartan, self.symmetrizer, self.rank
        norm = sum(c[i] * c[j] * d[i] * a[i][j] for i in range(r) for j in range(r))
        half = Fraction(norm, 2)
        n = self.coordinate_dim
        v = [Fraction(0)] * n
        for i in range(r):
            if c[i]:
                coeff = c[i] * d[i] / half
                for k in range(n):
                    v[k] += coeff * self.simple_coroots[i][k]
        assert all(x.denominator == 1 for x in v)
        return tuple(int(x) for x in v)

    @cached_property
    def opposition(self):
        """The permutation σ with w0(α_i) = -α_σ(i)."""
        r, t = self.rank, self.cartan_type
        ident = list(range(r))
        if t == "A":
            return list(reversed(ident))
        if t == "D" and r % 2:
            return ident[:-2] + [r - 1, r - 2]
        if t == "E" and r == 6:
            return [5, 1, 4, 3, 2, 0]
        return ident

    def w0_local(self, coords):
        """Action of the longest Weyl group element on local coordinates."""
        if self.is_torus:
            return tuple(coords)
        if self.gl_flag:
            return tuple(reversed(coords))
        if self.cartan_type == "C":
            return tuple(-x for x in coords)
        out = [0] * self.rank
        for i, s in enumerate(self.opposition):
            out[s] = -coords[i]
        return tuple(out)


class RootDatum:
    """Product of simple factors, GL factors and tori.

    ``components`` keeps the input order; ``factors`` lists the non-torus
    ones.  Simple roots are ordered factor by factor.
    """

    def __init__(self, components):
        self.components = tuple(components)
        if not self.components:
            raise RootSystemError("empty group")
        offsets, off = [], 0
        for f in self.components:
            offsets.append(off)
            off += f.coordinate_dim
        self.offsets = tuple(offsets)
        self.coordinate_dim = off

        simple, labels, cos = [], [], []
        for pos, f in enumerate(self.components):
            for i in range(f.rank):
                simple.append(self._embed(pos, f.simple_roots[i]))
                cos.append(self._embed(pos, f.simple_coroots[i]).coords)
                labels.append((pos, i + 1))
        self.simple_roots = tuple(simple)
        self.simple_root_labels = tuple(labels)
        self.simple_coroots = tuple(cos)

        pos_roots, coroot, simple_coords = [], {}, {}
        start = 0
        for pos, f in enumerate(self.components):
            for c in f.positive_roots_simple:
                beta = self._embed(pos, f.local_root(c))
                cv = self._embed(pos, f.local_coroot(c)).coords
                glob = [0] * len(simple)
                glob[start:start + f.rank] = c
                pos_roots.append(beta)
                coroot[beta] = cv
                coroot[-beta] = tuple(-x for x in cv)
                simple_coords[beta] = tuple(glob)
                simple_coords[-beta] = tuple(-x for x in glob)
            start += f.rank
        self.positive_roots = tuple(pos_roots)
        self._positive = frozenset(pos_roots)
        self._coroot = coroot
        self._root_simple_coords = simple_coords
        self._root_factor = {}
        for beta in pos_roots:
            self._root_factor[beta] = self._root_factor[-beta] = self.factor_of(beta)

    # -- construction helpers -------------------------------------------
    def _embed(self, pos, local):
        v = [0] * self.coordinate_dim
        off = self.offsets[pos]
        v[off:off + len(local)] = local
        return Weight(v)

    def local(self, weight, pos):
        off = self.offsets[pos]
        return weight.coords[off:off + self.components[pos].coordinate_dim]

    def factor_of(self, weight):
        """Index of the unique component on which ``weight`` is supported, else None."""
        hit = None
        for pos in range(len(self.components)):
            if any(self.local(weight, pos)):
                if hit is not None:
                    return None
                hit = pos
        return hit

    @property
    def factors(self):
        return tuple(f for f in self.components if not f.is_torus)

    @property
    def torus_count(self):
        return sum(1 for f in self.components if f.is_torus)

    @property
    def rank(self):
        return len(self.simple_roots)

    @property
    def zero(self):
        return Weight.zero(self.coordinate_dim)

    @property
    def name(self):
        return " x ".join(f.name for f in self.components)

    @property
    def dimension(self):
        """Dimension of the Lie algebra."""
        return self.coordinate_dim + 2 * len(self.positive_roots)

    def nonabelian_positions(self):
        return [p for p, f in enumerate(self.components) if not f.is_torus]

    def torus_positions(self):
        return [p for p, f in enumerate(self.components) if f.is_torus]

    # -- named weights ----------------------------------------------------
    def fundamental(self, pos, i):
        return self._embed(pos, self.components[pos].fundamental_weight(i))

    def simple(self, pos, i):
        f = self.components[pos]
        if not 1 <= i <= f.rank:
            raise RootSystemError("%s has no simple root α%d" % (f.name, i))
        return self._embed(pos, f.simple_roots[i - 1])

    def eps(self, pos, i):
        return self._embed(pos, self.components[pos].eps(i))

    def torus_character(self, pos):
        if not self.components[pos].is_torus:
            raise RootSystemError("component %d is not a torus" % pos)
        return self._embed(pos, (1,))

    # -- roots and pairings -------------------------------------------
    def is_root(self, beta):
        return beta in self._coroot

    def positive_root_test(self, beta):
        return beta in self._positive

    def coroot(self, beta):
        try:
            return self._coroot[beta]
        except KeyError:
            raise RootSystemError("%r is not a root" % (beta,)) from None

    def pairing(self, beta, lam):
        """<β^∨, λ> for a root β."""
        return lam.dot(self.coroot(beta))

    def dynkin_labels(self, lam):
        return tuple(lam.dot(c) for c in self.simple_coroots)

    def is_dominant(self, lam):
        return all(x >= 0 for x in self.dynkin_labels(lam))

    def root_coordinates(self, beta):
        """Simple-root coordinates of a root (either sign)."""
        return self._root_simple_coords[beta]

    def sum_decompositions(self, beta):
        """All (α, β - α) with α simple and β - α in R+ ∪ {0}."""
        out = []
        for alpha in self.simple_roots:
            rest = beta - alpha
            if rest.is_zero() or rest in self._positive:
                out.append((alpha, rest))
        return out

    @cached_property
    def _simple_solver(self):
        # per-component list of simple roots (local) for Q-span solving
        return [
            [f.simple_roots[i] for i in range(f.rank)] for f in self.components
        ]

    def simple_root_coordinates(self, beta):
        """Rational coordinates of β over Π, or None if β is not in their span."""
        out = []
        for pos, f in enumerate(self.components):
            loc = self.local(beta, pos)
            if f.rank == 0:
                if any(loc):
                    return None
                continue
            sol = _solve_small(self._simple_solver[pos], loc)
            if sol is None:
                return None
            out.extend(sol)
        return tuple(out)

    def root_lattice_coordinates(self, beta):
        """Integer coordinates over Π, or None if β is not in the root lattice."""
        c = self.simple_root_coordinates(beta)
        if c is None or any(x.denominator != 1 for x in c):
            return None
        return tuple(int(x) for x in c)

    def from_simple_coordinates(self, coeffs):
        v = self.zero
        for c, alpha in zip(coeffs, self.simple_roots):
            if c:
                v = v + c * alpha
        return v

    def height(self, beta):
        c = self.simple_root_coordinates(beta)
        return sum(c) if c is not None else None

    def w0(self, weight):
        out = []
        for pos, f in enumerate(self.components):
            out.extend(f.w0_local(self.local(weight, pos)))
        return Weight(out)

    def derived(self):
        """The derived group's datum and the restriction map on weights.

        Tori and GL(1) factors disappear, GL(n) becomes SL(n) (type A in
        Dynkin labels), all other factors are kept as they are.
        """
        comps, maps = [], []
        for pos, f in enumerate(self.components):
            if f.rank == 0:
                continue
            if f.gl_flag:
                comps.append(SimpleFactor("A", f.rank))
                maps.append((pos, "gl"))
            else:
                comps.append(f)
                maps.append((pos, "keep"))
        if not comps:
            raise RootSystemError("%s has trivial derived group" % self.name)
        target = RootDatum(comps)

        def restrict(weight):
            out = []
            for pos, how in maps:
                loc = self.local(weight, pos)
                if how == "gl":
                    out.extend(loc[i] - loc[i + 1] for i in range(len(loc) - 1))
                else:
                    out.extend(loc)
            return Weight(out)

        return target, restrict

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "RootDatum(%s)" % self.name


def _solve_small(columns, target):
    """Solve sum x_j columns[j] = target exactly (columns independent)."""
    from .linalg import solve_rational

    cols = [{k: Fraction(v) for k, v in enumerate(c) if v} for c in columns]
    tgt = {k: Fraction(v) for k, v in enumerate(target) if v}
    sol = solve_rational(cols, tgt)
    if sol is None:
        return None
    return [sol.get(j, Fraction(0)) for j in range(len(columns))]


_SUPPORTED = "A>=1, B>=2, C>=1, D>=3, E6/E7/E8, F4, G2, GL>=1, T"


def _descriptor_to_factor(desc):
    if isinstance(desc, SimpleFactor):
        return desc
    if isinstance(desc, str):
        desc = _parse_factor_token(desc)
    t = str(desc.get("type", "")).upper()
    rank = desc.get("rank", 0)
    if t in ("T", "TORUS"):
        return SimpleFactor("T", 0)
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise RootSystemError("rank must be an integer, got %r" % (rank,))
    if t == "GL":
        if rank < 1:
            raise RootSystemError("GL needs rank >= 1 (supported: %s)" % _SUPPORTED)
        return SimpleFactor("A", rank - 1, True)
    if t == "SL":
        t, rank = "A", rank - 1
    if t == "SP":
        if rank % 2:
            raise RootSystemError("Sp(2n) needs an even size")
        t, rank = "C", rank // 2
    if t not in "ABCDEFG" or len(t) != 1:
        raise RootSystemError("unsupported factor type %r (supported: %s)" % (t, _SUPPORTED))
    try:
        return SimpleFactor(t, rank)
    except RootSystemError:
        raise RootSystemError(
            "unsupported factor %s%s (supported: %s)" % (t, rank, _SUPPORTED)
        ) from None


def _parse_factor_token(tok):
    tok = tok.strip()
    up = tok.upper()
    if up in ("T", "GM", "TORUS"):
        return {"type": "T"}
    for prefix in ("GL", "SL", "SP"):
        if up.startswith(prefix) and up[len(prefix):].isdigit():
            return {"type": prefix, "rank": int(up[len(prefix):])}
    if len(up) >= 2 and up[0] in "ABCDEFG" and up[1:].isdigit():
        return {"type": up[0], "rank": int(up[1:])}
    raise RootSystemError("cannot parse group factor %r" % tok)


def build_root_datum(spec):
    """Build a datum from factor descriptors.

    ``spec`` is a list of descriptors (``{"type": "C", "rank": 3}``,
    ``{"type": "GL", "rank": 2}``, ``{"type": "T"}`` or strings such as
    ``"C3"``), or a dict ``{"factors": [...], "torus": k}`` which appends
    ``k`` torus factors after the listed ones.
    """
    if isinstance(spec, dict):
        items = list(spec.get("factors", []))
        torus = spec.get("torus", 0)
        if not isinstance(torus, int) or torus < 0:
            raise RootSystemError("torus must be a nonnegative integer")
        items += [{"type": "T"}] * torus
    else:
        items = list(spec)
    return RootDatum([_descriptor_to_factor(d) for d in items])


def parse_group(text):
    """Parse strings like ``"C3 x GL2 x T"`` or ``"B4xT"``."""
    parts = [p for p in text.replace("×", "x").split("x") if p.strip()]
    return build_root_datum([_parse_factor_token(p) for p in parts])
