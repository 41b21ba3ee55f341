import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from fglab import selftest as st

ROOT = Path(__file__).resolve().parent.parent
INPUTS = ROOT / "inputs"


def run(*args):
    p = subprocess.run([sys.executable, "-m", "fglab", *map(str, args)], capture_output=True, text=True, cwd=ROOT)
    return p.returncode, p.stdout, p.stderr


@pytest.fixture(scope="module")
def law(tmp_path_factory):
    path = tmp_path_factory.mktemp("law") / "lt.json"
    code, out, err = run("fgl-build", "--field", INPUTS / "q5.json", "--method", "frobenius", "--deg", 8, "--out", path)
    assert code == 0, err
    return path


def test_verify_ok(law):
    code, out, _ = run("fgl-verify", "--law", law)
    assert code == 0
    assert json.loads(out)["ok"]


def test_commutativity_failure_exit_2(law, tmp_path):
    obj = json.loads(law.read_text())
    for e, c in obj["series"]["terms"]:
        if e == [4, 1]:
            c["unit"][0][0] += 2  # stays a unit mod 5
            break
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, out, _ = run("fgl-verify", "--law", bad, "--no-assoc")
    assert code == 2
    assert "commutativity" in json.loads(out)["failing"]


def test_malformed_json_exit_1(tmp_path):
    bad = tmp_path / "broken.json"
    bad.write_text('{"p": 5, "f": 1,\n "e": }')
    code, _, err = run("field", "--field", bad)
    assert code == 1
    assert "line 2" in err and "column" in err


def test_unknown_command_exit_1():
    assert run("nonsense")[0] == 1


def test_missing_file_exit_1():
    code, _, err = run("height", "--law", "/nonexistent/law.json")
    assert code == 1 and "no such file" in err


def test_height_and_iso(law, tmp_path):
    code, out, _ = run("height", "--law", law)
    assert code == 0 and json.loads(out)["height"] == 1
    target = tmp_path / "log.json"
    assert run("fgl-build", "--field", INPUTS / "q5.json", "--method", "log", "--deg", 8, "--out", target)[0] == 0
    code, out, _ = run("iso", "--law", law, "--target", target)
    res = json.loads(out)
    assert code == 0 and res["found"] and res["verified"]


def test_koszul_command():
    code, out, _ = run("koszul", "--input", INPUTS / "koszul-pi.json")
    res = json.loads(out)
    assert code == 0
    assert res["homology"][0]["torsion"] == [5]
    assert res["regularity"]["regular"]


def test_moduli_command():
    code, out, _ = run("moduli", "--ring", "F_5", "--deg", 2)
    res = json.loads(out)
    assert code == 0 and res["bud_count"] == 5 and res["group_order"] == 20


def test_selftest_filter_deterministic():
    a = run("selftest", "--seed", 7, "--filter", "koszul")
    b = run("selftest", "--seed", 7, "--filter", "koszul")
    assert a[0] == 0 and a[1] == b[1]
    ids = [c["id"] for c in json.loads(a[1])["criteria"]]
    assert ids == [7]


def test_corrupted_golden_fails_named_criterion(tmp_path):
    gold = tmp_path / "golden"
    shutil.copytree(st.default_golden_dir(), gold)
    path = gold / "criterion_8.json"
    facts = json.loads(path.read_text())
    path.write_text(json.dumps({"tampered": True, **facts}))
    code, out, _ = run("selftest", "--filter", "7,8", "--golden-dir", gold)
    assert code == 2
    res = {c["id"]: c for c in json.loads(out)["criteria"]}
    assert res[8]["golden"] == "mismatch" and not res[8]["ok"]
    assert res[7]["ok"]
