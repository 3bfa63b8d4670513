import json
import subprocess
import sys

import pytest

from knoptangent.cli import EXIT_MISMATCH, EXIT_OK, EXIT_PARTIAL, EXIT_USAGE, main
from knoptangent.notation import parse_weight
from knoptangent.rootsys import parse_group


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_luna_tangent_json(capsys):
    code, out = run_json(capsys, "tangent", "--family", "luna")
    assert code == EXIT_OK
    assert [{"beta": w["beta"], "mult": w["mult"]} for w in out["weights"]] == [
        {"beta": "α", "mult": 1}, {"beta": "2α′", "mult": 1}]
    assert out["schema"] == "knoptangent.tangent/1"


def test_json_weights_parse_back(capsys):
    code, out = run_json(capsys, "tangent", "--family", "K6", "--param", "3")
    d = parse_group(out["group"])
    for w in out["weights"]:
        assert list(parse_weight(d, w["beta"])) == w["coords"]
    for e in out["E"]:
        assert list(parse_weight(d, e["weight"])) == e["coords"]


def test_output_is_deterministic(capsys):
    first = run(capsys, "tangent", "--family", "K7")[1]
    second = run(capsys, "tangent", "--family", "K7")[1]
    assert first == second


def test_k14_is_partial(capsys):
    code, out, _ = run(capsys, "tangent", "--family", "K14")
    assert code == EXIT_PARTIAL
    assert "criteria-tier only" in out
    assert out.count("unconfirmed, at most 1") == 2


def test_unavailable_tier_falls_back_to_partial(capsys):
    code, out = run_json(capsys, "tangent", "--group", "G2 x T", "--weights", "w1+e,2e", "--tier", "oracle")
    assert code == EXIT_PARTIAL
    assert out["complete"] is False
    assert out["caveats"][0].startswith("oracle tier unavailable")


def test_mismatch_exit_code(capsys):
    code, out = run_json(capsys, "tangent", "--group", "A1 x A1", "--weights", "2w1, 4w1+2w1'", "--d-w", "3")
    assert code == EXIT_MISMATCH
    assert out["verdict"] == "mismatch"


def test_ab_convention_applies_longest_element(capsys):
    _, tw = run_json(capsys, "tangent", "--family", "K7")
    _, ab = run_json(capsys, "tangent", "--family", "K7", "--convention", "ab")
    d = parse_group(tw["group"])
    for a, b in zip(tw["weights"], ab["weights"]):
        assert b["coords"] == list(d.w0(parse_weight(d, a["coords"])))


def test_mult_b4(capsys):
    code, out, _ = run(capsys, "mult", "--group", "B4", "--lambda", "ω4", "--mu", "ω4−2(α1+α2+α3+α4)")
    assert code == EXIT_OK and out.strip() == "0"


def test_mult_rejects_non_dominant(capsys):
    code, _, err = run(capsys, "mult", "--group", "A2", "--lambda", "w1-w2", "--mu", "0")
    assert code == EXIT_USAGE and "dominant" in err


def test_dim_commands(capsys):
    code, out = run_json(capsys, "dim", "--group", "E6", "--lambda", "w1")
    assert out["dimension"] == 27
    code, out = run_json(capsys, "dim", "--family", "K9", "--param", "5")
    assert code == EXIT_OK and out["quotient_dim"] == 1 and out["consistent"]


def test_candidates(capsys):
    code, out = run_json(capsys, "candidates", "--family", "K7")
    live = [r["beta"] for r in out["candidates"] if r["status"] != "excluded"]
    assert sorted(live) == sorted(["α1", "α2", "α1′", "α2′"])
    code, out = run_json(capsys, "candidates", "--family", "K7", "--basic", "--all")
    reasons = {r["reason"] for r in out["candidates"]}
    assert "kostant" in reasons and "quotient" not in reasons
    assert len([r for r in out["candidates"] if r["status"] != "excluded"]) > 4


def test_lattice_commands(capsys):
    code, out = run_json(capsys, "lattice", "intersect", "--group", "E6", "--weights", "w1,w6")
    assert out["rank"] == 2
    code, out = run_json(capsys, "lattice", "decompose", "--family", "luna", "--beta", "2a1'")
    assert out == {"member": True, "coefficients": [-4, 2], "schema": "knoptangent/1"}
    code, out = run_json(capsys, "lattice", "decompose", "--family", "luna", "--beta", "w1'")
    assert out["member"] is False and out["in_span"] is True


def test_catalog_commands(capsys):
    code, out = run_json(capsys, "catalog", "list")
    assert len(out["families"]) == 25
    code, out = run_json(capsys, "catalog", "show", "K5", "--param", "3")
    assert out["instance"] == "K5(n=3)" and out["d_W"] == 2
    assert out["expected"] == ["α1+α′", "α1+2α2+α3"]
    code, text, _ = run(capsys, "catalog", "show", "K15")
    assert code == EXIT_OK and "out-of-catalog-scope" in text


def test_verify_all_small(capsys, monkeypatch):
    monkeypatch.setenv("KNOPTAN_WORKERS", "2")
    code, out = run_json(capsys, "verify-all", "--max-rank", "3", "--family", "K5", "--family", "K14")
    assert code == EXIT_OK
    assert [r["instance"] for r in out["rows"]] == ["K5(n=2)", "K5(n=3)", "K14", "K14[derived]"]
    assert out["failed"] == 0 and out["partial"] == 2


def test_spec_and_weight_files(tmp_path, capsys):
    spec = tmp_path / "group.json"
    spec.write_text(json.dumps({"factors": [{"type": "C", "rank": 2}, {"type": "GL", "rank": 2}], "torus": 0}))
    wfile = tmp_path / "E.json"
    wfile.write_text(json.dumps({"weights": ["w1+w1'", "w2+w2'", "w2'"], "labels": ["a", "b", "c"]}))
    code, out = run_json(capsys, "tangent", "--spec", str(spec), "--weights", str(wfile))
    assert code == EXIT_OK
    assert [e["label"] for e in out["E"]] == ["a", "b", "c"]
    assert out["total"] == 2


def test_malformed_spec_reports_location(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"factors": [\n  {"type": "C", "rank": 2},\n  oops\n]}')
    code, _, err = run(capsys, "tangent", "--spec", str(bad), "--weights", "w1")
    assert code == EXIT_USAGE
    assert "bad.json:3:3" in err


@pytest.mark.parametrize("argv", [
    ["tangent"],
    ["tangent", "--group", "C2"],
    ["tangent", "--group", "Q7", "--weights", "w1"],
    ["tangent", "--family", "K6", "--param", "2"],
    ["tangent", "--group", "C2", "--weights", "w1+"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "knoptangent", "mult", "--group", "B4",
                          "--lambda", "w4", "--mu", "w4-2(a1+a2+a3+a4)"], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "0"
