"""Command-line front end.

Exit codes: 0 success, 1 a computation disagreed with its expectations,
2 bad usage or malformed input, 3 only a criteria-tier partial report
was possible.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import catalog as cat
from .chars import CharacterError, dim_orbit_check, freudenthal_multiplicity, weyl_dimension
from .criteria import CHECK_ORDER, CriteriaError, candidate_weights
from .lattice import LatticeBasis, LatticeError, NotInLattice, decompose_over_E, intersect, root_lattice
from .modules import ModuleError
from .notation import NotationError, parse_weight, render_combination, render_simple, render_weight
from .oracle import SCHEMA as TANGENT_SCHEMA
from .oracle import OracleError, OracleUnavailable, tangent_space, worker_count
from .rootsys import RootSystemError, build_root_datum, parse_group

SCHEMA = "knoptangent/1"
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_PARTIAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, payload, text_lines):
    if getattr(args, "json", False):
        payload = dict(payload)
        payload.setdefault("schema", SCHEMA)
        print(json.dumps(payload, ensure_ascii=False, indent=2))
    else:
        for line in text_lines:
            print(line)


def _load_json(path, what):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError("%s: cannot read %s: %s" % (path, what, exc.strerror))
    except json.JSONDecodeError as exc:
        raise UsageError("%s:%d:%d: malformed JSON in %s: %s" % (path, exc.lineno, exc.colno, what, exc.msg))


def _group_from_spec(path):
    data = _load_json(path, "group spec")
    try:
        if isinstance(data, str):
            return parse_group(data)
        if isinstance(data, dict) and "group" in data:
            return parse_group(data["group"])
        return build_root_datum(data)
    except (RootSystemError, TypeError, KeyError) as exc:
        raise UsageError("%s: bad group spec: %s" % (path, exc))


def _weights_from_file(datum, path):
    data = _load_json(path, "weights")
    labels = None
    if isinstance(data, dict):
        labels = data.get("labels")
        data = data.get("weights")
    if not isinstance(data, list) or not data:
        raise UsageError("%s: expected a nonempty list of weights" % path)
    out = []
    for i, item in enumerate(data):
        try:
            out.append(parse_weight(datum, item))
        except (NotationError, RootSystemError, TypeError) as exc:
            raise UsageError("%s: weights[%d]: %s" % (path, i, exc))
    return out, labels


def _split_list(text):
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch in ",;" and depth == 0:
            parts.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        parts.append(cur.strip())
    return parts


def _parse_params(fam, items):
    params = {}
    names = list(fam.params)
    for it in items or []:
        if "=" in it:
            k, v = it.split("=", 1)
        elif len(names) == 1:
            k, v = names[0], it
        else:
            raise UsageError("%s takes parameters %s; use name=value" % (fam.id, ", ".join(names)))
        try:
            params[k.strip()] = int(v)
        except ValueError:
            raise UsageError("parameter %s must be an integer" % k)
    if not params:
        return None
    base = fam.default_params()
    base.update(params)
    return base


def _setup(args, need_weights=True):
    """Datum, E, labels and the catalog instance (if any) from the common flags."""
    inst = None
    if getattr(args, "family", None):
        fam = cat.family(args.family)
        inst = cat.instantiate(fam, _parse_params(fam, args.param), getattr(args, "variant", "full") or "full")
        return inst.datum, inst.E, inst.labels, inst
    if getattr(args, "spec", None):
        datum = _group_from_spec(args.spec)
    elif getattr(args, "group", None):
        datum = parse_group(args.group)
    else:
        raise UsageError("give --family, --group or --spec")
    E, labels = None, None
    w = getattr(args, "weights", None)
    if w:
        if os.path.exists(w) and w.endswith(".json"):
            E, labels = _weights_from_file(datum, w)
        else:
            E = [parse_weight(datum, t) for t in _split_list(w)]
    elif need_weights:
        raise UsageError("give --weights")
    if E is not None and not labels:
        labels = ["λ%d" % (i + 1) for i in range(len(E))]
    return datum, E, labels, inst


def _beta_entry(datum, beta, E=None, labels=None):
    d = {"beta": render_simple(datum, beta), "coords": list(beta)}
    if E:
        try:
            a = decompose_over_E(beta, LatticeBasis(E, datum.coordinate_dim))
            d["E_coords"] = list(a)
            d["E_expression"] = render_combination(list(zip(a, labels)))
        except NotInLattice:
            d["E_coords"] = None
    return d


def cmd_tangent(args):
    datum, E, labels, inst = _setup(args)
    d_W = args.d_w if args.d_w is not None else (inst.d_W if inst else None)
    expected = inst.expected if inst else None
    tier = args.tier
    if tier == "auto" and inst is not None and inst.tier == "oracle":
        tier = "oracle"
    try:
        rep = tangent_space(datum, E, labels, tier=tier, d_W=d_W, expected=expected)
    except OracleUnavailable as exc:
        rep = tangent_space(datum, E, labels, tier="criteria", d_W=d_W, expected=expected)
        rep.caveats.insert(0, "%s tier unavailable: %s" % (tier, exc))
    out = rep.to_json()
    out["schema"] = TANGENT_SCHEMA
    out["convention"] = args.convention
    if inst is not None:
        out["family"] = inst.name
    if args.convention == "ab":
        for w in out["weights"]:
            b = datum.w0(parse_weight(datum, w["coords"]))
            w["beta"], w["coords"] = render_simple(datum, b), list(b)
        if out.get("expected"):
            out["expected"] = [render_simple(datum, datum.w0(b)) for b in rep.expected]
    lines = ["group %s, E = {%s}" % (datum.name, ", ".join(render_weight(datum, w) for w in E)),
             "tier: %s" % rep.tier]
    for w in out["weights"]:
        extra = ""
        if w["E_expression"]:
            extra = " = " + w["E_expression"]
        status = w["status"]
        if status == "unconfirmed":
            status += ", at most %s" % w["upper_bound"]
        lines.append("  %-28s mult %d  [%s]%s" % (w["beta"], w["mult"], status, extra))
        for lab, v in w["extends_per_lambda"].items():
            lines.append("      over %s: %s" % (lab, v))
    lines.append("total %d%s" % (rep.total, "" if d_W is None else ", d_W = %d" % d_W))
    lines.append("verdict: %s" % rep.verdict)
    for c in rep.caveats:
        lines.append("note: " + c)
    _emit(args, out, lines)
    if not rep.complete:
        return EXIT_PARTIAL
    return EXIT_MISMATCH if rep.verdict == "mismatch" else EXIT_OK


def cmd_candidates(args):
    datum, E, labels, inst = _setup(args)
    verdicts = candidate_weights(E, datum, extended=not args.basic, shortcut=not args.basic)
    rows = []
    for v in verdicts:
        if v.reason == "simple_plus_root" and not args.all:
            continue
        row = _beta_entry(datum, v.beta, E, labels)
        row.update({"status": v.status, "reason": v.reason, "checks": dict(v.checks)})
        rows.append(row)
    lines = []
    for r in rows:
        if r["status"] == "excluded" and not args.all:
            continue
        lines.append("%-28s %-22s %s" % (r["beta"], r["status"], r.get("E_expression") or ""))
    excl = {}
    for r in rows:
        if r["status"] == "excluded":
            excl[r["reason"]] = excl.get(r["reason"], 0) + 1
    lines.append("excluded: " + ", ".join("%s %d" % (k, excl[k]) for k in CHECK_ORDER + ("simple_root_shortcut",) if k in excl))
    _emit(args, {"group": datum.name, "candidates": rows}, lines)
    return EXIT_OK


def cmd_lattice(args):
    datum, E, labels, inst = _setup(args)
    if args.action == "intersect":
        a = LatticeBasis(E, datum.coordinate_dim)
        if args.other:
            b = LatticeBasis.spanned_by([parse_weight(datum, t).coords for t in _split_list(args.other)],
                                        datum.coordinate_dim)
        else:
            b = root_lattice(datum)
        res = intersect(a, b)
        basis = res.canonical()
        rows = [_beta_entry(datum, g, E, labels) for g in basis]
        lines = ["%s   = %s" % (r["beta"], r.get("E_expression")) for r in rows]
        _emit(args, {"group": datum.name, "basis": rows, "rank": res.rank}, lines)
        return EXIT_OK
    beta = parse_weight(datum, args.beta)
    try:
        a = decompose_over_E(beta, E)
        payload = {"member": True, "coefficients": list(a)}
        lines = ["%s = %s" % (render_simple(datum, beta), render_combination(list(zip(a, labels))))]
    except NotInLattice as exc:
        payload = {"member": False, "in_span": exc.in_span}
        lines = ["not in the lattice spanned by E" + (" (but in its rational span)" if exc.in_span else "")]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_mult(args):
    datum = parse_group(args.group)
    lam = parse_weight(datum, args.lam)
    mu = parse_weight(datum, args.mu)
    m = freudenthal_multiplicity(datum, lam, mu)
    _emit(args, {"group": datum.name, "lambda": list(lam), "mu": list(mu), "multiplicity": m}, [str(m)])
    return EXIT_OK


def cmd_dim(args):
    datum, E, labels, inst = _setup(args, need_weights=False)
    if args.lam:
        lam = parse_weight(datum, args.lam)
        n = weyl_dimension(datum, lam)
        _emit(args, {"group": datum.name, "lambda": list(lam), "dimension": n}, [str(n)])
        return EXIT_OK
    if E is None:
        raise UsageError("give --lambda or --weights")
    rep = dim_orbit_check(datum, E, inst.dim_W if inst else None)
    lines = ["dim V = %d, dim g·x0 = %d, dim V/g·x0 = %d" % (rep["dim_V"], rep["dim_orbit"], rep["quotient_dim"])]
    if rep.get("dim_W") is not None:
        lines.append("dim W = %d (%s)" % (rep["dim_W"], "consistent" if rep["consistent"] else "INCONSISTENT"))
    _emit(args, rep, lines)
    return EXIT_OK if rep.get("consistent", True) else EXIT_MISMATCH


def cmd_catalog(args):
    if args.action == "list":
        rows = []
        for f in cat.load_catalog():
            rows.append({"id": f.id, "title": f.title, "group": f.group, "tier": f.tier, "status": f.status,
                         "params": {k: v["min"] for k, v in f.params.items()}, "variants": f.variants})
        lines = ["%-5s %-22s %-20s %-12s %s" % (r["id"], r["tier"], r["group"], r["status"], r["title"]) for r in rows]
        _emit(args, {"families": rows}, lines)
        return EXIT_OK
    if not args.id:
        raise UsageError("catalog show needs a family id")
    fam = cat.family(args.id)
    if not fam.in_scope:
        _emit(args, {"id": fam.id, "title": fam.title, "tier": fam.tier, "status": fam.status},
              ["%s %s" % (fam.id, fam.title), "tier: %s (%s)" % (fam.tier, fam.status)])
        return EXIT_OK
    inst = cat.instantiate(fam, _parse_params(fam, args.param), args.variant)
    d = inst.datum
    payload = {
        "id": fam.id, "instance": inst.name, "title": fam.title, "group": d.name, "tier": inst.tier,
        "status": fam.status,
        "E": [{"label": l, "weight": render_weight(d, w), "coords": list(w)} for l, w in zip(inst.labels, inst.E)],
        "d_W": inst.d_W, "dim_W": inst.dim_W,
        "expected": [render_simple(d, b) for b in inst.expected] if inst.expected is not None else None,
    }
    lines = ["%s  %s" % (inst.name, fam.title), "group %s, tier %s" % (d.name, inst.tier)]
    lines += ["  %s = %s" % (l, render_weight(d, w)) for l, w in zip(inst.labels, inst.E)]
    lines.append("d_W = %s, dim W = %s" % (inst.d_W, inst.dim_W))
    if payload["expected"] is not None:
        lines.append("expected tangent weights: {%s}" % ", ".join(payload["expected"]))
    _emit(args, payload, lines)
    return EXIT_OK


def _verify_one(key):
    fid, params, variant = key
    inst = cat.instantiate(fid, params, variant)
    row = cat.verify_instance(inst)
    row.pop("report")
    return row


def cmd_verify_all(args):
    keys = [(i.family.id, i.params, i.variant)
            for i in cat.sweep(args.max_rank, families=args.family or None)]
    workers = worker_count()
    if workers > 1 and len(keys) > 1:
        with ProcessPoolExecutor(workers) as pool:
            rows = list(pool.map(_verify_one, keys))
    else:
        rows = [_verify_one(k) for k in keys]
    lines = ["%-20s %-9s %-8s %5s %5s  %s" % ("instance", "tier", "result", "total", "d_W", "weights")]
    for r in rows:
        lines.append("%-20s %-9s %-8s %5d %5s  {%s}%s" % (
            r["instance"], r["tier"], r["status"], r["total"], r["d_W"], ", ".join(r["weights"]),
            ("  " + "; ".join(r["messages"])) if r["messages"] else ""))
    failed = [r for r in rows if r["status"] == cat.FAIL]
    partial = [r for r in rows if r["status"] == cat.PARTIAL]
    lines.append("%d instances: %d pass, %d partial (criteria tier, candidates match), %d fail"
                 % (len(rows), len(rows) - len(failed) - len(partial), len(partial), len(failed)))
    _emit(args, {"rows": rows, "failed": len(failed), "partial": len(partial)}, lines)
    return EXIT_MISMATCH if failed else EXIT_OK


def _add_source(p, weights=True):
    p.add_argument("--family", help="catalog family id, e.g. K5 or luna")
    p.add_argument("--param", action="append", metavar="N|name=N", help="family parameter (repeatable)")
    p.add_argument("--variant", default="full", help="catalog variant (full or derived)")
    p.add_argument("--group", help='group, e.g. "C3 x GL2 x T"')
    p.add_argument("--spec", metavar="FILE", help="group spec as JSON")
    if weights:
        p.add_argument("--weights", metavar="LIST|FILE", help="comma-separated weights or a JSON file")


def build_parser():
    ap = argparse.ArgumentParser(prog="knoptangent", description="Tangent spaces of moduli of affine spherical varieties at the most degenerate point.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tangent", help="T_ad-weights of the tangent space")
    _add_source(p)
    p.add_argument("--tier", choices=["auto", "oracle", "character", "criteria"], default="auto")
    p.add_argument("--d-w", type=int, dest="d_w", help="expected dimension d_W")
    p.add_argument("--convention", choices=["twisted", "ab"], default="twisted",
                   help="ab reports w0 of each weight")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("candidates", help="run the combinatorial filters")
    _add_source(p)
    p.add_argument("--basic", action="store_true", help="only the basic filters, no shortcut")
    p.add_argument("--all", action="store_true", help="also list excluded candidates")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_candidates)

    p = sub.add_parser("lattice", help="lattice computations on ⟨E⟩")
    p.add_argument("action", choices=["intersect", "decompose"])
    _add_source(p)
    p.add_argument("--other", help="second lattice generators (default: the root lattice)")
    p.add_argument("--beta", help="weight to decompose over E")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("mult", help="weight multiplicity by Freudenthal's formula")
    p.add_argument("--group", required=True)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_mult)

    p = sub.add_parser("dim", help="Weyl dimension, or the orbit dimension count for E")
    _add_source(p)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_dim)

    p = sub.add_parser("catalog", help="list or show catalog families")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("id", nargs="?")
    p.add_argument("--param", action="append", metavar="N|name=N")
    p.add_argument("--variant", default="full")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify-all", help="sweep the catalog and compare with expectations")
    p.add_argument("--max-rank", type=int, dest="max_rank")
    p.add_argument("--family", action="append", help="restrict to these families (repeatable)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify_all)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, NotationError, RootSystemError, cat.CatalogError, CriteriaError, LatticeError,
            CharacterError, ModuleError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except OracleError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
