import csv
import io
import json
import subprocess
import sys

import pytest

from frobsig.cli import main
from frobsig.report import CSV_COLUMNS, strip_timestamp
from frobsig.verify import corpus_paths

CORPUS = {p.stem: p for p in corpus_paths()}


def write(tmp_path, text, name="inst.inst"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def run_json(args, tmp_path, name="out.json"):
    out = tmp_path / name
    code = main([*args, "--out", str(out), "--format", "json"])
    return code, json.loads(out.read_text())


def test_cusp_srel(tmp_path):
    code, doc = run_json(["run", str(CORPUS["cusp"]), "--e-max", "2"], tmp_path)
    assert code == 0
    recs = doc["records"]
    assert [r["e"] for r in recs] == [1, 2]
    assert all(r["value"] == {"num": 0, "den": 1} and r["paths_agree"] for r in recs)
    assert recs[0]["C_emp"] == {"num": 0, "den": 1}
    assert recs[0]["limit_interval"] == [{"num": 0, "den": 1}, {"num": 0, "den": 1}]
    assert recs[0]["dimension"] == {"value": 1, "source": "computed"}
    for key in ("instance", "e", "value", "argmin", "candidate_count", "paths_agree",
                "C_emp", "limit_interval", "dimension", "warnings"):
        assert key in recs[0]
    assert "timestamp" in doc


def test_regular_hk(tmp_path):
    path = write(tmp_path, "field GF(2)\nring x y\nideal M = x, y\ntask hk M\n")
    code, doc = run_json(["run", path, "--e-max", "3"], tmp_path)
    assert code == 0
    assert [r["length"] for r in doc["records"]] == [4, 16, 64]


def test_dim_override(tmp_path):
    code, doc = run_json(["run", str(CORPUS["cusp"]), "--dim", "1", "--e", "1"], tmp_path)
    assert code == 0
    rec = doc["records"][0]
    assert rec["dimension"] == {"value": 1, "source": "user"}
    assert any("supplied by the user" in w for w in rec["warnings"])


def test_verify_bundled_corpus(capsys):
    assert main(["verify"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out and "dual_path" in out


def test_exit_codes(tmp_path, capsys):
    bad = write(tmp_path, "field GF(2)\nring x y\nideal I = x^2 + x, y\ntask srel I\n")
    assert main(["run", bad]) == 2
    assert "NotPrimaryToOrigin" in capsys.readouterr().err
    bad = write(tmp_path, "field GF(2)\nring x y\nideal I = x, z\ntask srel I\n")
    assert main(["run", bad]) == 2
    assert "line 3, column 14" in capsys.readouterr().err
    assert main(["run", str(tmp_path / "missing.inst")]) == 2
    assert main(["run", str(CORPUS["socle4"]), "--budget", "10"]) == 3
    assert "66" in capsys.readouterr().err


def test_csv_and_table(capsys):
    assert main(["run", str(CORPUS["quadric_f3"]), "--format", "csv"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert [r[3:5] for r in rows[1:]] == [["13", "9"], ["121", "81"], ["1093", "729"]]
    assert main(["run", str(CORPUS["quadric_f3"])]) == 0
    table = capsys.readouterr().out
    assert "1093/729" in table and "40/243" in table


def test_gamma_subcommand(tmp_path):
    code, doc = run_json(
        ["gamma", str(CORPUS["gamma_f2t"]), "--Gamma", "t", "--levels", "0,1,2", "--e", "1"], tmp_path
    )
    assert code == 0
    recs = doc["records"]
    assert [r["level"] for r in recs] == [0, 1, 2]
    assert [r["field"] for r in recs] == ["GF(2)(t)", "GF(2)(u)", "GF(2)(u)"]
    assert all(r["preserved"] and r["monotone"] for r in recs)
    assert recs[0]["Gamma"] == ["t"]
    assert any("level-L Gamma" in w for w in recs[0]["warnings"])


def test_gamma_empty_identical_to_level_zero(tmp_path):
    path = write(tmp_path, CORPUS["gamma_f2t"].read_text().replace("ideal I0 = x", "ideal I0 = x^2, x*y, y^2"))
    _, empty = run_json(["gamma", path, "--Gamma", "", "--levels", "0,1,2"], tmp_path, "a.json")
    _, zero = run_json(["gamma", path, "--Gamma", "t", "--levels", "0"], tmp_path, "b.json")
    base = dict(zero["records"][0])
    for rec in empty["records"]:
        rec = dict(rec)
        for key in ("level", "Gamma", "stabilized"):
            rec.pop(key)
            base.pop(key, None)
        assert json.dumps(rec, sort_keys=True) == json.dumps(base, sort_keys=True)


def test_oracle_diff(tmp_path):
    path = write(
        tmp_path,
        "field GF(3)\nring x y\nmod x^2 - y^3\nideal I = x, y^3\ntask oracle-diff I e_max=1\n",
    )
    code, doc = run_json(["run", path], tmp_path)
    assert code == 0
    cands = doc["records"][0]["candidates"]
    assert cands and all(c["agree"] and c["groebner"] == c["rank"] for c in cands)


def test_emit_gb(capsys):
    assert main(["run", str(CORPUS["cusp"]), "--e", "1", "--emit-gb"]) == 0
    err = capsys.readouterr().err
    assert "basis of J + I0^[q]" in err and "y^2" in err


def test_parallel_json_identical(tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    path = str(CORPUS["socle4"])
    assert main(["run", path, "--parallel", "1", "--out", str(a), "--format", "json"]) == 0
    assert main(["run", path, "--parallel", "4", "--out", str(b), "--format", "json"]) == 0
    assert strip_timestamp(a.read_text()) == strip_timestamp(b.read_text())


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "frobsig", "run", str(CORPUS["cusp"]), "--e", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "cusp" in proc.stdout


def test_rejects_unknown_flag():
    with pytest.raises(SystemExit):
        main(["run", str(CORPUS["cusp"]), "--colour"])
