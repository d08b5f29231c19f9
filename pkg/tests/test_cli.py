import json
import shutil
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

import tschirn
from tschirn.cli import main
from tschirn.suite import SuiteConfig, check_golden, load_golden, run_suite

GOLDEN = Path(tschirn.__file__).parent / "data" / "golden"


def run(*argv):
    code, out = main(list(argv), capture=True)
    return code, out


def run_json(*argv):
    code, out = run(*argv)
    return code, json.loads(out)


def test_predict():
    code, doc = run_json("predict", "--m", "3", "--e", "5")
    assert code == 0
    assert doc["case_a"] == [0, -5, -10]
    assert doc["genus"] == 13
    assert doc["cone"]["image_degree"] == 15
    code, doc = run_json("predict", "--m", "4", "--e", "1", "--delta", "1")
    assert doc["case_b"] == [0, -1, -3, -4]
    assert doc["genus"] == 6


def test_usage_errors():
    assert run("predict", "--m", "1", "--e", "2")[0] == 1
    assert run("predict", "--m", "3")[0] == 1
    assert run()[0] == 1
    assert run("bogus")[0] == 1
    assert run("intersect", "--d1", "2Q", "--d2", "F", "--e", "1")[0] == 1


def test_intersect_pushforward_adjunction_cohomology():
    assert run_json("intersect", "--d1", "H", "--d2", "H", "--e", "4")[1]["intersection"] == 4
    code, doc = run_json("pushforward", "--k", "-3", "--e", "2")
    assert code == 0 and doc["R1"] == [-2, -4] and doc["direct"] == []
    assert run_json("adjunction", "--class", "3H", "--e", "2")[1]["genus"] == 4
    code, doc = run_json("cohomology", "--class=-2H", "--e", "1")
    assert doc["h"] == [0, 0, 0]
    assert run_json("cohomology", "--class", "H", "--e", "1")[1]["h"] == [3, 0, 0]


def test_verify_random_and_reproducible():
    code, a = run_json("verify", "--m", "3", "--e", "2", "--delta", "1", "--seed", "11")
    assert code == 0 and a["ok"] and a["match"] and a["twisted_match"]
    _, b = run_json("verify", "--m", "3", "--e", "2", "--delta", "1", "--seed", "11")
    assert a["instance"] == b["instance"] and a["computed"] == b["computed"]


def test_verify_golden_files():
    code, doc = run_json("verify", "--instance", str(GOLDEN / "cox_m3_e1_d1.json"))
    assert code == 0 and doc["ok"]
    code, doc = run_json("verify", "--instance", str(GOLDEN / "cox_nodal.json"))
    assert code == 2 and doc["error"] == "singular"
    assert [Fraction(v) for v in doc["base_values"]] == [0]
    code, doc = run_json("verify", "--instance", str(GOLDEN / "cox_two_sections.json"), "--no-smoothness-check")
    assert code == 2 and doc["error"] == "reducible"


def test_plane_commands():
    code, doc = run_json("plane", str(GOLDEN / "plane_quartic_through_center.json"))
    assert code == 0 and doc["case"] == "b" and doc["computed"] == [0, -2, -3]
    code, doc = run_json("plane", str(GOLDEN / "plane_cubic_flex.json"))
    assert code == 2 and doc["error"] == "tangency"
    code, doc = run_json("plane", "--m", "3", "--seed", "2")
    assert code in (0, 2)
    if code == 0:
        assert doc["case"] == "a" and doc["ok"]


def test_plane_center_on_line_is_usage_error(tmp_path):
    bad = {"plane": {"degree": 2, "G": [[2, 0, 0, "1"], [0, 2, 0, "1"], [0, 0, 2, "-1"]], "P": ["1", "0", "0"], "L": ["0", "1", "0"]}}
    f = tmp_path / "bad.json"
    f.write_text(json.dumps(bad))
    assert run("plane", str(f))[0] == 1


def test_pretty_output_is_a_table():
    code, out = run("predict", "--m", "2", "--e", "1", "--pretty")
    assert code == 0
    assert out.splitlines()[0].split()[0] == "input"


def test_suite_smoke_selected_criteria():
    code, doc = run_json("suite", "--scale", "smoke", "--criteria", "6,7,8")
    assert code == 0, doc
    assert [c["criterion"] for c in doc["criteria"]] == [6, 7, 8]
    assert all(g["passed"] for g in doc["golden"])


def test_corrupted_golden_is_reported(tmp_path):
    for p in GOLDEN.glob("*.json"):
        shutil.copy(p, tmp_path / p.name)
    target = tmp_path / "cox_m3_e1_d1.json"
    doc = json.loads(target.read_text())
    doc["expect"]["splitting"] = [0, -1, -1]
    target.write_text(json.dumps(doc))
    docs = {d["name"]: d for d in load_golden(tmp_path)}
    ok, msg = check_golden(docs[doc["name"]])
    assert not ok and "computed" in msg
    summary = run_suite(SuiteConfig(scale="smoke", golden_dir=str(tmp_path)), only=[8])
    rows = {g["name"]: g["passed"] for g in summary.golden}
    assert rows[doc["name"]] is False
    assert sum(rows.values()) == len(rows) - 1
    assert not summary.passed


@pytest.mark.parametrize("argv", [["-m", "tschirn", "predict", "--m", "2", "--e", "3"]])
def test_module_entry_point(argv):
    res = subprocess.run([sys.executable, *argv], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["case_a"] == [0, -3]
