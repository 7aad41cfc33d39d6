"""Command line behaviour, spec files and verification reports."""

import json
from pathlib import Path

import pytest

from koszulkit.cli import evaluate_object, main
from koszulkit.errors import SpecMismatch
from koszulkit.report import run_verify
from koszulkit.specfile import load_spec, parse_point, parse_spec

SPEC = str(Path(__file__).resolve().parents[1] / "specs" / "m1.yaml")
ORIGIN = "t=0.5,u=0,v=0,w=0"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("obj,args,want", [
    ("bar.curvature", "dt,V,V,dt", -0.25),
    ("hat.curvature", "V,dt,V,dt", 1.0),
    ("hat.koszul", "dt,dt,dt", 1.0),
    ("tilde.curvature", "dt,V,dt,V", 0.5),
])
def test_eval_headline_components(capsys, obj, args, want):
    code, out, _ = run(capsys, "eval", SPEC, obj, args, ORIGIN)
    assert code == 0
    assert float(out) == pytest.approx(want, rel=1e-12)


def test_eval_routes_agree():
    for obj, args in [("bar.curvature", "dt,V,W,dt"), ("hat.koszul", "V,dt,U"), ("bar.koszul", "U,W,V")]:
        a = evaluate_object(SPEC, obj, args, "t=0.7,u=0.3,v=-0.2,w=0.4")
        b = evaluate_object(SPEC, obj, args, "t=0.7,u=0.3,v=-0.2,w=0.4", route="catalog")
        assert b == pytest.approx(a, rel=1e-10, abs=1e-12)


def test_eval_exit_codes(capsys):
    assert run(capsys, "eval", SPEC, "nope.curvature", "dt,V,V,dt", ORIGIN)[0] == 2
    assert run(capsys, "eval", SPEC, "bar.curvature", "dt,V,Q,dt", ORIGIN)[0] == 2
    assert run(capsys, "eval", SPEC, "bar.curvature", "dt,V,dt", ORIGIN)[0] == 2
    assert run(capsys, "eval", SPEC, "barcurvature", "dt,V,V,dt", ORIGIN)[0] == 2
    assert run(capsys, "eval", "missing.yaml", "bar.curvature", "dt,V,V,dt", ORIGIN)[0] == 2
    code, _, err = run(capsys, "eval", SPEC, "bar.curvature", "dt,V,V,dt", "t=12,u=0,v=0,w=0")
    assert code == 3 and "t=12" in err
    assert run(capsys, "bogus")[0] == 2


def test_singular_metric_exit_code(tmp_path, capsys):
    text = Path(SPEC).read_text().replace('warping: "t^2"', 'warping: "t-0.5"')
    p = tmp_path / "s.yaml"
    p.write_text(text)
    assert run(capsys, "eval", str(p), "bar.curvature", "dt,V,V,dt", ORIGIN)[0] == 3


def test_fixtures_command(capsys, tmp_path):
    code, out, _ = run(capsys, "fixtures", "--list")
    assert code == 0 and out.splitlines()[0].startswith("M1:")
    out_path = tmp_path / "m4.json"
    code, _, err = run(capsys, "fixtures", "--run", "M4", "--set", "warping=1+t", "--out", str(out_path))
    d = json.loads(out_path.read_text())
    assert d["fixture"] == "M4" and d["degenerate_skipped"]
    assert "skipped" in err and code in (0, 1)
    assert run(capsys, "fixtures", "--run", "M7")[0] == 2
    assert run(capsys, "fixtures", "--run", "M1", "--set", "t")[0] == 2
    code, out, _ = run(capsys, "fixtures", "--run", "M1_linear", "--spec", SPEC)
    assert json.loads(out)["params"]["t"] == 2.0


def test_verify_writes_report_and_csv(capsys, tmp_path):
    out, csv_path = tmp_path / "r.json", tmp_path / "r.csv"
    code, _, err = run(capsys, "verify", "--suite", "identities", "--n", "3", "--out", str(out),
                       "--csv", str(csv_path))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["body"]["passed"] is True
    assert set(doc["body"]["summaries"]) == {"koszul-identities", "curvature-identities", "second-oracle"}
    assert len(csv_path.read_text().splitlines()) == 1 + len(doc["body"]["records"])
    assert "koszul-identities" in err


def test_verify_failure_exit_and_spec_fixtures(capsys):
    code, out, _ = run(capsys, "verify", SPEC, "--suite", "fixtures")
    doc = json.loads(out)
    assert code == 1 and doc["body"]["passed"] is False
    assert [f["label"] for f in doc["body"]["fixtures"]] == ["M1_linear", "M1_square", "M2_constant"]
    assert doc["body"]["worst_offenders"]


def test_report_body_changes_with_seed_but_not_with_time():
    a = run_verify(["identities"], seed=1, n=2)
    b = run_verify(["identities"], seed=1, n=2)
    c = run_verify(["identities"], seed=2, n=2)
    assert a.body_text() == b.body_text() != c.body_text()
    assert json.loads(a.to_json())["meta"]["body_sha256"] == json.loads(b.to_json())["meta"]["body_sha256"]


def test_degenerate_suite_records():
    rep = run_verify(["degenerate-limit"])
    cases = {r.case for r in rep.records}
    assert rep.passed
    assert any(c.startswith("hypothesis") for c in cases)
    assert "counterexample:diverged" in cases


def test_spec_parsing_errors(tmp_path):
    with pytest.raises(SpecMismatch):
        parse_spec({"charts": {}, "extra": {}})
    with pytest.raises(SpecMismatch):
        parse_spec({"charts": {"I": {"coords": ["t"]}}, "connections": {"c": {"kind": "ssm"}}})
    with pytest.raises(SpecMismatch):
        parse_spec({"charts": {"I": {"coords": ["t"]}}, "connections": {"c": {"kind": "weird"}}})
    with pytest.raises(SpecMismatch):
        parse_spec({"connections": {"c": {"kind": "ap"}}})
    bad = tmp_path / "bad.yaml"
    bad.write_text("charts: [unclosed")
    with pytest.raises(SpecMismatch):
        load_spec(bad)
    with pytest.raises(SpecMismatch):
        parse_point("t=abc")
    assert parse_point("t=0.5, u=-1") == {"t": 0.5, "u": -1.0}


def test_spec_file_contents():
    spec = load_spec(SPEC)
    M = spec.product()
    assert M.kind == "warped" and M.chart.coord_names == ("t", "u", "v", "w")
    assert set(spec.connections) == {"levi_civita", "bar", "hat", "tilde"}
    assert spec.lifted(M, "V").tag.index == 1 and spec.lifted(M, "dt").tag.is_base
    with pytest.raises(SpecMismatch):
        spec.lifted(M, "Z")
