import csv
import io
import json

import jsonschema
import pytest

from permineq import cli
from permineq.report import VIOLATED, build_report

SCHEMAS = {name: json.loads((cli.SCHEMA_DIR / f"{name}.schema.json").read_text())
           for name in ("report", "census")}


def run(*argv):
    buf = io.StringIO()
    code = cli.main(list(argv), out=buf)
    return code, buf.getvalue()


def test_occ():
    code, out = run("occ", "--perm", "12435", "--pattern", "21", "--locations")
    assert code == 0
    assert json.loads(out) == {"perm": "12435", "pattern": "21", "occ": 1, "locations": [[3, 4]]}
    code, out = run("occ", "--perm", "1234", "--pattern", "123")
    assert json.loads(out)["occ"] == 4
    code, out = run("occ", "--perm", "5274316", "--pattern", "213", "--format", "csv")
    assert out.splitlines()[1] == "5274316,213,9"


def test_occ_bad_input(capsys):
    with pytest.raises(SystemExit) as exc:
        run("occ", "--perm", "12x4", "--pattern", "21")
    assert exc.value.code == 2
    assert "position 2" in capsys.readouterr().err
    code, _ = run("occ", "--perm", "12", "--pattern", "123")
    assert code == 2


def test_census():
    code, out = run("census", "--n", "4", "--v", "123")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["census"])
    assert doc["by_count"]["0"] == 14
    code, out = run("census", "--n", "3", "--v", "21", "--classes")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["census"])
    assert doc["by_count"] == {"0": 1, "1": 2, "2": 2, "3": 1}
    code, out = run("census", "--n", "5", "--v", "21")
    assert sum(json.loads(out)["by_count"].values()) == 120


def test_census_capacity_exit_code():
    code, _ = run("census", "--n", "10", "--v", "21")
    assert code == 3


def test_verify_t1a_exhaustive():
    code, out = run("verify", "t1a", "--n", "6", "--exhaustive", "--summary-only")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["report"])
    assert code == 0 and doc["summary"]["holds"] == doc["summary"]["total"] == 7200


def test_verify_t2b_reference_chain():
    code, out = run("verify", "t2b", "--v", "143265", "--chain", "2;2,3;2,3,5;2,3,5,6;2,3,4,5,6",
                    "--n", "6", "--uniform-weights", "--x", "0.5")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["report"])
    assert code == 0 and doc["reports"][0]["holds"] is True


def test_verify_t2a_exact():
    code, out = run("verify", "t2a", "--n", "5", "--v", "312", "--p", "1/2", "--mode", "exact")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMAS["report"])
    rep = doc["reports"][0]
    assert code == 0 and rep["mode"] == "exact" and rep["holds"] is True
    assert "/" in rep["lhs_exact"]


def test_decimal_p_defaults_to_float():
    code, out = run("verify", "t2a", "--n", "4", "--v", "21", "--p", "0.3")
    assert json.loads(out)["reports"][0]["mode"] == "float"
    code, out = run("verify", "t2a", "--n", "4", "--v", "21", "--p", "0.3", "--mode", "exact")
    assert json.loads(out)["reports"][0]["mode"] == "exact"


def test_indeterminate_exit_code():
    code, out = run("verify", "lemma3", "--perm", "2413", "--d", "1", "--p", "0.25")
    assert code == 5
    assert json.loads(out)["reports"][0]["holds"] == "indeterminate"


def test_violated_exit_code(monkeypatch):
    fake = build_report("T1a", {}, 1.0, 0.0, "float")
    assert fake.verdict == VIOLATED
    monkeypatch.setattr(cli, "verify_t1a", lambda *a, **k: fake)
    code, out = run("verify", "t1a", "--perm", "1234", "--ell", "1", "--d", "2")
    assert code == 4
    jsonschema.validate(json.loads(out), SCHEMAS["report"])


def test_non_log_supermodular_measure_file(tmp_path):
    path = tmp_path / "mu.json"
    path.write_text(json.dumps({"n": 2, "entries": [
        {"subset": [], "weight": "1/10"}, {"subset": [1], "weight": "2/5"},
        {"subset": [2], "weight": "2/5"}, {"subset": [1, 2], "weight": "1/10"}]}))
    code, _ = run("verify", "t2a", "--n", "2", "--v", "21", "--measure", str(path))
    assert code == 2


def test_csv_and_json_carry_same_numbers():
    args = ["verify", "t1b", "--n", "6", "--samples", "5", "--d", "4", "--seed", "3"]
    _, js = run(*args)
    _, cs = run(*args, "--format", "csv")
    reports = json.loads(js)["reports"]
    rows = list(csv.DictReader(io.StringIO(cs)))
    assert len(rows) == len(reports)
    for rep, row in zip(reports, rows):
        for key in ("lhs_log", "rhs_log", "slack_log"):
            assert str(rep[key]) == row[key] or float(row[key]) == rep[key]
        assert json.loads(row["inputs"]) == rep["inputs"]


def test_simulate():
    code, out = run("simulate", "--samples", "20", "--seed", "5")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 40
    assert {r["pattern"] for r in rows} == {"5274316", "1234765"}
    assert all(r["holds"] == "holds" for r in rows)
    assert run("simulate", "--samples", "20", "--seed", "5")[1] == out
    assert run("simulate", "--samples", "20", "--seed", "6")[1] != out


def test_scan():
    code, out = run("scan", "--n", "5", "--d", "3", "--p", "1/2", "--format", "csv")
    assert code == 0 and len(out.splitlines()) == 7


def test_entropy_commands(tmp_path):
    joint = {"arity": 3, "entries": [
        {"tuple": [a, b, c], "prob": 0.125} for a in (0, 1) for b in (0, 1) for c in (0, 1)]}
    path = tmp_path / "j.json"
    path.write_text(json.dumps(joint))
    code, out = run("entropy", "shearer", "--joint", str(path), "--cover", "1,2;1,3;2,3", "--t", "2")
    row = json.loads(out)["rows"][0]
    assert code == 0 and row["holds"] and abs(row["slack"]) <= 1e-12
    path.write_text(json.dumps({"arity": 3, "entries": [{"tuple": [0, 1, 0], "prob": 1.0}]}))
    code, out = run("entropy", "shearer", "--joint", str(path))
    row = json.loads(out)["rows"][0]
    assert row["lhs"] == 0 and row["rhs"] == 0
    code, out = run("entropy", "shearer", "--joint", str(path), "--cover", "1,2;1,2", "--t", "2")
    assert code == 2
    code, out = run("entropy", "random", "--samples", "100", "--seed", "4")
    assert code == 0 and all(r["holds"] for r in json.loads(out)["rows"])
    code, out = run("entropy", "bounded", "--probs", "0.5,0.25,0.25")
    assert json.loads(out)["rows"][0]["holds"]


def test_timestamp_only_when_requested():
    _, plain = run("occ", "--perm", "21", "--pattern", "1")
    _, stamped = run("occ", "--perm", "21", "--pattern", "1", "--timestamp")
    assert "generated_at" not in plain and "generated_at" in json.loads(stamped)


def test_threads_do_not_change_output(monkeypatch):
    a = run("census", "--n", "6", "--v", "132", "--classes")[1]
    b = run("census", "--n", "6", "--v", "132", "--classes", "--threads", "2")[1]
    monkeypatch.setenv(cli.THREADS_ENV, "3")
    c = run("census", "--n", "6", "--v", "132", "--classes")[1]
    assert a == b == c
