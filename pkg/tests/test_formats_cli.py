import json
import subprocess
import sys

import pytest

from tpalg import (GF, QQ, FormatError, catalog_entry, check_profile, emit_algebra,
                   emit_report, full_catalog, parse_algebra, parse_report, reverify_json_witness,
                   truncated_polynomial_algebra)
from tpalg.cli import main


def _doc(**over):
    doc = {"format": "tpa-algebra/1", "field": "Q", "basis": ["e1", "e2"],
           "ops": [{"name": "bracket", "arity": 2, "symmetry": "alternating",
                    "table": [{"in": [0, 1], "out": {"1": "1"}}]}]}
    doc.update(over)
    return json.dumps(doc)


def test_round_trip_catalog():
    for field in (QQ, GF(7)):
        for e in full_catalog(field):
            data = emit_algebra(e.bundle)
            back = parse_algebra(data)
            assert emit_algebra(back) == data
            assert back.ops == e.bundle.ops and back.maps == e.bundle.maps
            assert back.field == field


def test_round_trip_polynomial_maps():
    A = truncated_polynomial_algebra(["x", "y"], [3, 2])
    back = parse_algebra(emit_algebra(A))
    assert back.maps["E_x"] == A.maps["E_x"] and back.space == A.space


def test_scalars_are_strings():
    doc = json.loads(emit_algebra(catalog_entry("nonabelian-d").bundle))
    for op in doc["ops"]:
        for row in op["table"]:
            assert all(isinstance(v, str) for v in row["out"].values())


def test_fraction_scalars():
    b = parse_algebra(_doc(ops=[{"name": "m", "arity": 2, "symmetry": "symmetric",
                                 "table": [{"in": [0, 0], "out": {"1": "-3/4"}}]}]))
    assert b.ops["m"].basis_value((0, 0))[1] == QQ("-3/4")


@pytest.mark.parametrize("bad, fragment", [
    (_doc(ops=[{"name": "b", "arity": 2, "symmetry": "alternating",
                "table": [{"in": [0, 0], "out": {"0": "1"}}]}]), "$.ops[0]"),
    (_doc(field={"gf": 4}), "$.field"),
    (_doc(field={"gf": 2}), "$.field"),
    (_doc(basis=["e1", "e1"]), "$.basis"),
    (_doc(ops=[{"name": "b", "arity": 2, "symmetry": "none",
                "table": [{"in": [0, 1], "out": {"0": "1"}}, {"in": [0, 1], "out": {"0": "2"}}]}]),
     "$.ops[0].table[1]"),
    (_doc(ops=[{"name": "b", "arity": 2, "symmetry": "none",
                "table": [{"in": [0, 5], "out": {"0": "1"}}]}]), "$.ops[0].table[0].in"),
    (_doc(ops=[{"name": "b", "arity": 2, "symmetry": "none",
                "table": [{"in": [0, 1], "out": {"0": "x"}}]}]), "$.ops[0].table[0].out"),
    (_doc(maps=[{"name": "D", "matrix": [["1"]]}]), "$.maps[0].matrix"),
    (_doc(format="other/1"), "format"),
    ("{not json", "not valid JSON"),
])
def test_malformed_inputs(bad, fragment):
    with pytest.raises(FormatError) as info:
        parse_algebra(bad)
    assert fragment in str(info.value)


def test_symmetric_table_inconsistent():
    bad = _doc(ops=[{"name": "m", "arity": 2, "symmetry": "symmetric",
                     "table": [{"in": [0, 1], "out": {"0": "1"}}, {"in": [1, 0], "out": {"0": "2"}}]}])
    with pytest.raises(FormatError):
        parse_algebra(bad)


def test_report_determinism_and_witness():
    b = catalog_entry("nonabelian-c").bundle
    reports = check_profile(b, "TransposedPoisson")
    one = emit_report(reports, "c")
    two = emit_report(check_profile(b, "TransposedPoisson"), "c")
    assert one == two
    doc = parse_report(one)
    failing = [r for r in doc["results"] if not r["holds"]]
    assert failing
    w = failing[0]["witness"]
    assert w["labels"] == ["e1", "e2", "e1"] and w["left"] != w["right"]
    assert reverify_json_witness(b, w, failing[0]["binding"])
    tampered = dict(w, left=w["right"])
    assert not reverify_json_witness(b, tampered, failing[0]["binding"])


def test_parse_report_rejects_other_format():
    with pytest.raises(FormatError):
        parse_report(json.dumps({"format": "x"}))


# -- command line ---------------------------------------------------------------------------

@pytest.fixture
def files(tmp_path):
    out = {}
    for eid in ("nonabelian-c", "nonabelian-d", "nonabelian-b", "abelian-c"):
        p = tmp_path / f"{eid}.json"
        p.write_bytes(emit_algebra(catalog_entry(eid).bundle))
        out[eid] = str(p)
    p = tmp_path / "xy.json"
    p.write_bytes(emit_algebra(truncated_polynomial_algebra(["x", "y"], [2, 2])))
    out["xy"] = str(p)
    return out


def test_cli_check_pass_and_fail(files, capsys):
    assert main(["check", files["nonabelian-d"], "--profile", "transposed-poisson"]) == 0
    capsys.readouterr()
    assert main(["check", files["nonabelian-c"], "--axiom", "leibniz"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["results"][0]["witness"]["indices"] == [0, 0, 1]
    assert main(["check", files["nonabelian-c"], "--axiom", "leibniz", "--no-prune"]) == 1


def test_cli_usage_errors(files, tmp_path, capsys):
    assert main(["check", str(tmp_path / "missing.json"), "--axiom", "leibniz"]) == 2
    assert main(["check", files["nonabelian-d"], "--axiom", "no_such_axiom"]) == 2
    assert main(["check", files["nonabelian-d"]]) == 2  # neither --profile nor --axiom
    bad = tmp_path / "bad.json"
    bad.write_text(_doc(field={"gf": 4}))
    assert main(["check", str(bad), "--axiom", "jacobi"]) == 2
    assert "$.field" in capsys.readouterr().err
    assert main(["bogus"]) == 2


def test_cli_derivations_and_solve(files, capsys):
    assert main(["derivations", files["nonabelian-d"], "--ops", "mul,bracket"]) == 0
    assert json.loads(capsys.readouterr().out)["results"][0]["dimension"] == 1
    assert main(["solve", "compatible-products", files["nonabelian-d"]]) == 0
    assert json.loads(capsys.readouterr().out)["results"][0]["dimension"] == 2


def test_cli_construct_and_recheck(files, tmp_path, capsys):
    out = tmp_path / "br.json"
    assert main(["construct", "derivation-bracket", files["xy"], "--map", "E_x", "--out", str(out)]) == 0
    assert main(["check", str(out), "--profile", "transposed-poisson"]) == 0
    capsys.readouterr()
    mu = tmp_path / "mu.json"
    assert main(["construct", "wedge", files["xy"], "--map", "Id", "--map", "E_x", "--map", "E_y",
                 "--out", str(mu)]) == 0
    assert main(["check", str(mu), "--axiom", "fundamental_identity", "--bind", "mu=mu"]) == 0
    capsys.readouterr()
    # precondition failure is a reported check failure
    assert main(["construct", "rescale", files["nonabelian-c"], "--h", "e2"]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["results"][0]["witness"] is not None


def test_cli_tensor_and_catalog(files, tmp_path, capsys):
    out = tmp_path / "t.json"
    assert main(["tensor", files["nonabelian-b"], files["abelian-c"], "--out", str(out)]) == 0
    assert main(["check", str(out), "--profile", "transposed-poisson"]) == 0
    capsys.readouterr()
    assert main(["catalog", "list"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 15
    assert main(["catalog", "emit", "nope"]) == 2
    assert main(["catalog", "emit", "der-3", "--field", '{"gf": 5}']) == 0
    assert json.loads(capsys.readouterr().out)["field"] == {"gf": 5}


def test_cli_fuzz_deterministic(capsys):
    argv = ["fuzz", "--target", "tpa-samples", "--dim", "4", "--seed", "3", "--count", "2"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert main(["fuzz", "--target", "involutions", "--field", '{"gf": 3}', "--dim", "3",
                 "--count", "1"]) == 0


def test_cli_ladder(tmp_path, capsys):
    p = tmp_path / "xyz.json"
    assert main(["poly", "--vars", "x,y,z", "--caps", "2,2,2", "--out", str(p)]) == 0
    q = tmp_path / "br.json"
    assert main(["construct", "derivation-bracket", str(p), "--map", "E_x", "--out", str(q)]) == 0
    code = main(["ladder", str(q), "--levels", "1", "--derivations", "E_y"])
    assert code == 0
    assert json.loads(capsys.readouterr().out)["results"][0]["verdict"] == "all-pass"


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "tpalg", "check", files["nonabelian-d"],
                           "--profile", "transposed-poisson"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["format"] == "tpa-report/1"


def test_empty_report():
    doc = parse_report(emit_report([]))
    assert doc["results"] == []
