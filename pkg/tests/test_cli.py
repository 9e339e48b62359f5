from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fixlab.actions import coset_action
from fixlab.cli import main
from fixlab.corpus import save_instance

from support import inversion, trivial


@pytest.fixture
def s3_file(tmp_path):
    p = tmp_path / "s3.json"
    save_instance(inversion(3), p)
    return p


@pytest.fixture
def v4_with_action(tmp_path):
    inst = trivial("C2", "C2")
    inst.gaction = coset_action(inst.G, inst.J_sub).to_dict()
    p = tmp_path / "v4.json"
    save_instance(inst, p)
    return p


def test_verify_pass_writes_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["verify", "lem-ab", "--max-order", "12", "--report", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["status"] == "pass" and report["claim"] == "lem-ab"
    assert "wall_time" not in report
    assert "PASS" in capsys.readouterr().out


def test_verify_timing_flag(tmp_path):
    out = tmp_path / "r.json"
    assert main(["verify", "eq-1", "--max-order", "12", "--report", str(out), "--timing"]) == 0
    assert "wall_time" in json.loads(out.read_text())


def test_verify_vacuous_run_fails():
    # nothing has order <= 2, and an empty suite is itself a failure
    assert main(["verify", "lem-nil", "--max-order", "2"]) == 1


def test_usage_errors():
    assert main(["verify", "no-such-claim"]) == 2
    assert main([]) == 2
    assert main(["verify", "lem-ab", "--max-order", "x"]) == 2
    assert main(["fixpoint", "--instance", "a", "--abelian", "--nilpotent"]) == 2
    assert main(["verify", "all", "--max-order", "8"]) == 2


def test_h1_and_complements(s3_file, tmp_path, capsys):
    assert main(["h1", "--instance", str(s3_file)]) == 0
    h1 = json.loads(capsys.readouterr().out)
    assert (h1["z1_size"], h1["h1_size"]) == (3, 1)
    out = tmp_path / "c.json"
    assert main(["complements", "--instance", str(s3_file), "--out", str(out)]) == 0
    comps = json.loads(out.read_text())
    assert comps["count"] == 3 and comps["conjugacy_classes"] == 1


def test_fixpoint(v4_with_action, s3_file, capsys):
    assert main(["fixpoint", "--instance", str(v4_with_action), "--abelian"]) == 0
    res = json.loads(capsys.readouterr().out)
    assert res["status"] == "fixed" and res["finder"] == "abelian"
    # no attached action
    assert main(["fixpoint", "--instance", str(s3_file)]) == 2
    assert "gaction" in capsys.readouterr().err


def test_parse_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["h1", "--instance", str(bad)]) == 2
    assert main(["h1", "--instance", str(tmp_path / "missing.json")]) == 2
    data = json.loads(inversion(3).dumps())
    del data["action"]
    bad.write_text(json.dumps(data))
    assert main(["complements", "--instance", str(bad)]) == 2
    assert "missing field 'action'" in capsys.readouterr().err


def test_corpus_command(tmp_path):
    out = tmp_path / "corpus"
    assert main(["corpus", "--max-order", "8", "--out", str(out)]) == 0
    index = json.loads((out / "index.json").read_text())
    assert index["count"] == len(index["instances"]) > 0
    first = index["instances"][0]["id"]
    assert main(["h1", "--instance", str(out / f"{first}.json")]) == 0


def test_search_ls(capsys):
    # A4 = (C2 x C2) x| C3 is the only candidate at this bound
    assert main(["search", "ls", "--max-order", "12"]) == 0
    text = capsys.readouterr().out
    assert "none found within bounds" in text and "among 1 candidate" in text


def test_console_script_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "fixlab", "verify", "eq-1", "--max-order", "12"],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.startswith("eq-1: PASS")
    proc = subprocess.run([sys.executable, "-m", "fixlab", "bogus"], capture_output=True,
                          text=True)
    assert proc.returncode == 2
