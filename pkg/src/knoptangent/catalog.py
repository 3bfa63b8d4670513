"""Knop's list of saturated indecomposable spherical modules, as fixtures.

The data lives in ``data/catalog.json``.  A family entry holds string
templates; ``instantiate`` fills in the parameters, parses the weights
and returns an ``Instance`` with everything needed to run and check a
tangent space computation.
"""

import ast
import json
import operator
import re
from dataclasses import dataclass, field
from importlib import resources

from .lattice import LatticeBasis
from .notation import parse_weight
from .rootsys import parse_group

__all__ = [
    "CatalogError",
    "FamilyEntry",
    "Instance",
    "load_catalog",
    "family",
    "family_ids",
    "instantiate",
    "sweep",
    "evaluate",
    "verify_instance",
]


class CatalogError(ValueError):
    pass


_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.FloorDiv: operator.floordiv,
    ast.Mod: operator.mod,
}
_CMPOPS = {
    ast.Eq: operator.eq,
    ast.NotEq: operator.ne,
    ast.Lt: operator.lt,
    ast.LtE: operator.le,
    ast.Gt: operator.gt,
    ast.GtE: operator.ge,
}
_FUNCS = {"min": min, "max": max}


def evaluate(expr, env):
    """Evaluate a small integer expression (arithmetic, comparisons, min/max)."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in env:
                raise CatalogError("unknown parameter %r in %r" % (node.id, expr))
            return env[node.id]
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.Compare):
            left = ev(node.left)
            for op, right in zip(node.ops, node.comparators):
                r = ev(right)
                if type(op) not in _CMPOPS or not _CMPOPS[type(op)](left, r):
                    return False
                left = r
            return True
        if isinstance(node, ast.BoolOp):
            vals = [ev(v) for v in node.values]
            return all(vals) if isinstance(node.op, ast.And) else any(vals)
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*[ev(a) for a in node.args])
        raise CatalogError("unsupported expression %r" % expr)

    try:
        tree = ast.parse(str(expr), mode="eval")
    except SyntaxError:
        raise CatalogError("malformed expression %r" % expr) from None
    return ev(tree)


_BRACES = re.compile(r"\{([^{}]*)\}")


def _fill(template, env, aux=None):
    text = template
    if aux:
        for name in sorted(aux, key=len, reverse=True):
            text = text.replace("$" + name, "(%s)" % aux[name])
    return _BRACES.sub(lambda m: str(evaluate(m.group(1), env)), text)


@dataclass
class FamilyEntry:
    id: str
    title: str
    group: str
    params: dict
    tier: str
    status: str
    raw: dict

    @property
    def in_scope(self):
        return self.tier != "out-of-catalog-scope"

    @property
    def variants(self):
        return ["full"] + sorted(self.raw.get("variants", {}))

    def default_params(self):
        return {k: (v.get("sweep") or [v["min"]])[0] for k, v in self.params.items()}

    def sweep_params(self, max_rank=None):
        """Parameter dicts from the sweep lists, optionally capped."""
        out = [{}]
        for k, spec in self.params.items():
            vals = spec.get("sweep") or [spec["min"]]
            if max_rank is not None:
                vals = [v for v in vals if v <= max(max_rank, spec["min"])]
            out = [dict(d, **{k: v}) for d in out for v in vals]
        return [p for p in out if self._param_error(p) is None]

    def _param_error(self, params):
        for k, spec in self.params.items():
            if k not in params:
                return "missing parameter %s" % k
            v = params[k]
            if not isinstance(v, int) or v < spec["min"]:
                return "%s requires %s >= %d" % (self.id, k, spec["min"])
        extra = set(params) - set(self.params)
        if extra:
            return "%s takes no parameter %s" % (self.id, ", ".join(sorted(extra)))
        cons = self.raw.get("constraint")
        if cons and not evaluate(cons, params):
            return "%s requires %s" % (self.id, self.raw.get("constraint_text", cons))
        return None


@dataclass
class Instance:
    family: FamilyEntry
    params: dict
    variant: str
    datum: object
    E: list
    labels: list
    E_text: list
    d_W: int = None
    dim_W: int = None
    components: int = None
    expected: list = None
    invariants: list = None
    tier: str = "oracle"
    notes: list = field(default_factory=list)

    @property
    def name(self):
        p = ",".join("%s=%d" % kv for kv in sorted(self.params.items()))
        s = self.family.id + ("(%s)" % p if p else "")
        if self.variant != "full":
            s += "[%s]" % self.variant
        return s

    def check_arithmetic(self):
        """d_W = rank of ⟨E⟩ minus the number of summands of W; E independent and dominant."""
        LatticeBasis(self.E, self.datum.coordinate_dim)
        for lam in self.E:
            if not self.datum.is_dominant(lam):
                raise CatalogError("%s: %r is not dominant" % (self.name, lam))
        if self.variant == "full" and self.d_W is not None and self.components is not None:
            if self.d_W != len(self.E) - self.components:
                raise CatalogError("%s: d_W does not match rank minus components" % self.name)
        return True


_CACHE = {}


def load_catalog(path=None):
    """Family entries in catalog order."""
    key = path or "<package>"
    if key in _CACHE:
        return _CACHE[key]
    if path is None:
        text = resources.files("knoptangent").joinpath("data/catalog.json").read_text(encoding="utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    data = json.loads(text)
    out = []
    for raw in data["families"]:
        out.append(FamilyEntry(raw["id"], raw.get("title", ""), raw["group"], raw.get("params", {}),
                               raw.get("tier", "oracle"), raw.get("status", "new"), raw))
    _CACHE[key] = out
    return out


def family_ids():
    return [f.id for f in load_catalog()]


def family(fid):
    for f in load_catalog():
        if f.id.lower() == str(fid).lower():
            return f
    raise CatalogError("unknown family %r" % fid)


def _expand_E(items, env, aux):
    out = []
    for it in items:
        if isinstance(it, str):
            out.append(_fill(it, env, aux))
            continue
        var = it["for"]
        lo = evaluate(_fill(it["from"], env), env)
        hi = evaluate(_fill(it["to"], env), env)
        for k in range(lo, hi + 1):
            out.append(_fill(it["weight"], dict(env, **{var: k}), aux))
    return out


def instantiate(fid, params=None, variant="full"):
    """Concrete root datum, E and expectations for one family member."""
    fam = family(fid) if not isinstance(fid, FamilyEntry) else fid
    if not fam.in_scope:
        raise CatalogError("%s carries no basic weights here; it is listed as verified in prior work" % fam.id)
    params = dict(fam.default_params() if params is None else params)
    err = fam._param_error(params)
    if err:
        raise CatalogError(err)
    raw = dict(fam.raw)
    for case in raw.get("cases", []):
        if evaluate(case["when"], params):
            raw.update({k: v for k, v in case.items() if k != "when"})
            break
    if variant != "full":
        vs = raw.get("variants", {})
        if variant not in vs:
            raise CatalogError("%s has no %r variant" % (fam.id, variant))
        v = vs[variant]
        if "when" in v and not evaluate(v["when"], params):
            raise CatalogError("%s: %s" % (fam.id, v.get("when_text", v["when"])))
        raw.update({k: val for k, val in v.items() if k not in ("when", "when_text")})
    aux = {k: _fill(t, params) for k, t in raw.get("aux", {}).items()}
    datum = parse_group(_fill(raw["group"], params))
    E_text = _expand_E(raw["E"], params, aux)
    E = [parse_weight(datum, t) for t in E_text]
    labels = ["λ%d" % (i + 1) for i in range(len(E))]
    expected = None
    if "expected" in raw:
        expected = [parse_weight(datum, _fill(t, params, aux)) for t in raw["expected"]]
    invariants = None
    if "invariants" in raw:
        invariants = [parse_weight(datum, _fill(t, params, aux)) for t in raw["invariants"]]

    def num(key):
        return evaluate(raw[key], params) if key in raw else None

    inst = Instance(fam, params, variant, datum, E, labels, E_text,
                    d_W=num("d_W"), dim_W=num("dim_W") if variant == "full" else None,
                    components=raw.get("components"), expected=expected,
                    invariants=invariants, tier=raw.get("tier", fam.tier))
    inst.check_arithmetic()
    return inst


def sweep(max_rank=None, families=None, include_variants=True):
    """Every (family, params, variant) instance in catalog order."""
    out = []
    for fam in load_catalog():
        if not fam.in_scope or (families and fam.id not in families):
            continue
        for p in fam.sweep_params(max_rank):
            for var in (fam.variants if include_variants else ["full"]):
                try:
                    out.append(instantiate(fam, p, var))
                except CatalogError:
                    if var == "full":
                        raise
        # variants outside their range are skipped
    return out


PASS, PARTIAL, FAIL = "pass", "partial", "FAIL"


def verify_instance(inst, tier=None):
    """Run one instance through the pipeline and compare with its expectations.

    Returns a dict row.  ``partial`` means the criteria tier produced
    exactly the expected candidates but could not confirm them.
    """
    from .chars import orbit_tangent_character
    from .notation import render_simple
    from .oracle import tangent_space

    if tier is None:
        tier = "oracle" if inst.tier == "oracle" else "auto"
    rep = tangent_space(inst.datum, inst.E, inst.labels, tier=tier, d_W=inst.d_W, expected=inst.expected)
    msgs = []
    if rep.tier == "oracle":
        dim_orbit = rep.notes["dim_orbit"]
    else:
        dim_orbit = sum(orbit_tangent_character(inst.datum, inst.E).values())
    if inst.dim_W is not None and dim_orbit != inst.dim_W:
        msgs.append("dim g·x0 = %d but dim W = %d" % (dim_orbit, inst.dim_W))
    if rep.complete:
        status = PASS if rep.verdict in ("confirmed", "computed") else FAIL
        if rep.verdict == "mismatch":
            msgs.append("weights differ from the expected set")
    else:
        got = sorted(w.beta for w in rep.weights)
        want = sorted(inst.expected or [])
        status = PARTIAL if inst.expected is not None and got == want else FAIL
        if status == FAIL:
            msgs.append("criteria candidates differ from the expected set")
    if msgs:
        status = FAIL
    return {
        "family": inst.family.id,
        "instance": inst.name,
        "params": dict(inst.params),
        "variant": inst.variant,
        "tier": rep.tier,
        "status": status,
        "total": rep.total,
        "d_W": inst.d_W,
        "dim_orbit": dim_orbit,
        "dim_W": inst.dim_W,
        "weights": [render_simple(inst.datum, w.beta) for w in rep.weights],
        "messages": msgs,
        "report": rep,
    }
