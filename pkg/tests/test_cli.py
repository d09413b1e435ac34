import json
import subprocess
import sys
from pathlib import Path

import jsonschema

from superkrull.cli import main

ROOT = Path(__file__).resolve().parent.parent
PRES = ROOT / "presentations"
SCHEMA = json.loads((ROOT / "docs" / "report.schema.json").read_text())


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return data


def test_ksdim_free(capsys):
    data = report(capsys, "ksdim", PRES / "free.sp")
    assert data["result"] == {"even": 2, "odd": 3, "witness": [1, 2, 3]}
    assert data["command"] == "ksdim" and data["schema_version"] == "1"


def test_ksdim_witness(capsys):
    data = report(capsys, "ksdim", PRES / "x1_annihilates_y1.sp", "--witness")
    assert data["result"]["witness"] == [2, 3]
    assert data["result"]["witness_check"] == {"parameter_system": True, "noether_injective": True}


def test_onerel(capsys):
    r = report(capsys, "onerel", PRES / "one_relation.sp")["result"]
    assert r["index"] == 1 and r["exact"] == 2


def test_regular(capsys):
    r = report(capsys, "regular", PRES / "singular.sp")["result"]
    assert r["verdict"] == "not_regular" and r["failed_clause"] == "(iii)"
    assert r["generic_nonsingular"] is False
    r = report(capsys, "regular", PRES / "annihilated.sp")["result"]
    assert r["failed_clause"] == "(ii)"


def test_omega_and_oracle(capsys):
    r = report(capsys, "omega", PRES / "free.sp")["result"]
    assert r["generic_rank"]["p"] == 2 and r["generic_rank"]["q"] == 3
    assert r["regular_via_omega"] is True
    r = report(capsys, "oracle", PRES / "one_relation.sp")["result"]
    assert r["odd_dim"] == 2


def test_experiment(capsys):
    data = report(capsys, "experiment", PRES / "three_blocks.sp", "--trials", "2", "--seed", "5")
    assert data["seed"] == 5
    assert data["result"]["values"] == [6]


def test_human_output(capsys):
    code, out, _ = run(capsys, "ksdim", PRES / "free.sp")
    assert code == 0 and "Ksdim = 2|3" in out
    code, out, _ = run(capsys, "regular", PRES / "singular.sp")
    assert "failed clause (iii)" in out


def test_reports_are_reproducible(capsys):
    def strip(text):
        data = json.loads(text)
        data.pop("timing")
        return json.dumps(data, sort_keys=True, indent=2)

    for argv in (("ksdim", PRES / "x1_annihilates_y1.sp"), ("experiment", PRES / "one_relation.sp", "--seed", "3")):
        _, a, _ = run(capsys, *argv, "--json")
        _, b, _ = run(capsys, *argv, "--json")
        assert strip(a) == strip(b)


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.sp"
    bad.write_text("field Q\neven x\nodd y1\nrelations:\n  x + y1\n")
    code, _, err = run(capsys, "ksdim", bad)
    assert code == 2 and "line 5" in err
    code, _, _ = run(capsys, "ksdim", tmp_path / "missing.sp")
    assert code == 2
    scoped = tmp_path / "scoped.sp"
    scoped.write_text("field Q\neven x\nodd y1\nrelations:\n  x\n")
    assert run(capsys, "omega", scoped)[0] == 0
    assert run(capsys, "oracle", scoped)[0] == 3
    assert run(capsys, "onerel", PRES / "free.sp")[0] == 3
    zero = tmp_path / "zero.sp"
    zero.write_text("field Q\neven x\nodd y1\nrelations:\n  1\n")
    assert run(capsys, "ksdim", zero)[0] == 3


def test_stdin_and_module_entry_point():
    text = (PRES / "free.sp").read_text()
    proc = subprocess.run(
        [sys.executable, "-m", "superkrull", "ksdim", "-", "--json"],
        input=text, capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["result"]["odd"] == 3
