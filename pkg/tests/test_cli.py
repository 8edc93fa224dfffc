import csv
import io
import json
import shutil
import subprocess
from fractions import Fraction
from pathlib import Path

import pytest

from gptmeasure import scenarios as sc
from gptmeasure.cli import run

MODELS = Path(__file__).resolve().parent.parent / "models"


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def js(text):
    return json.loads(text)


def m(name):
    return MODELS / name


def test_pgep_grid_csv_matches_closed_form():
    code, out, _ = call("demo", "pgep-grid")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 27
    for r in rows:
        assert Fraction(r["P_g"]) == max(Fraction(0), 1 - (Fraction(r["q"]) + 1) * Fraction(r["p"]))


def test_pgep_grid_json():
    code, out, _ = call("--format", "json", "demo", "pgep-grid")
    assert code == 0 and len(js(out)["grid"]) == 27


def test_order_test_gbit_exit3_with_certificate():
    code, out, _ = call("order", "test", m("gbit_mx.json"), m("gbit_mz.json"))
    o = js(out)
    assert code == 3 and o["verdict"] == "NotBelow" and o["verified"] is True
    assert Fraction(o["gainA"]) > Fraction(o["gainB_bound"])


def test_sim_runs_identity_trivial():
    code, out, _ = call("sim", "runs", m("id.json"), m("trivial.json"))
    o = js(out)
    assert code == 0 and o["value"] == "1/1" and o["verified"] is True


def test_yes_no_questions():
    assert call("sim", "test", m("id.json"), m("trivial.json"))[0] == 3
    assert call("sim", "test", m("trivial.json"), m("id.json"))[0] == 0
    assert call("incomp", "test", m("gbit_mx.json"), m("gbit_mz.json"))[0] == 3
    assert call("incomp", "test", m("gbit_mx.json"), m("gbit_mx.json"))[0] == 0
    assert call("order", "equiv", m("id.json"), m("id.json"))[0] == 0
    assert call("order", "equiv", m("id.json"), m("trivial.json"))[0] == 3
    assert call("exper", "compare", m("exp_weak.json"), m("exp_strong.json"))[0] == 0
    assert call("exper", "compare", m("exp_strong.json"), m("exp_weak.json"))[0] == 3


def test_values():
    code, out, _ = call("incomp", "rinc", m("gbit_mx.json"), m("gbit_mz.json"))
    assert code == 0 and js(out)["value"] == "1/3" and js(out)["verified"]
    code, out, _ = call("incomp", "pgcomp", m("gbit_xz_partitioned.json"))
    assert code == 0 and js(out)["value"] == "3/4"
    code, out, _ = call("sim", "qsucc", m("gbit_mx.json"), m("gbit_mz.json"))
    assert code == 0 and js(out)["value"] == "0/1"
    code, out, _ = call("gain", "eval", m("ensemble_x.json"), m("gbit_mx.json"))
    assert code == 0 and js(out)["value"] == "1/1"


def test_validation_exit2_names_invariant():
    code, out, _ = call("space", "validate", m("not_generating.json"))
    assert code == 2 and js(out)["error"] == "NotGenerating"
    code, out, _ = call("space", "validate", m("gbit_space.json"))
    assert code == 0 and js(out)["classical"] is False


def test_bad_json_and_missing_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert call("evm", "validate", bad)[0] == 65
    assert call("evm", "validate", tmp_path / "missing.json")[0] == 65
    weird = tmp_path / "weird.json"
    weird.write_text(json.dumps({"space": "gbit", "effects": {"a": ["x", 0, 0]}}))
    assert call("evm", "validate", weird)[0] == 65


def test_unknown_command_and_product_limit():
    assert call("frobnicate")[0] == 64
    assert call("sim", "explode", "x")[0] == 64
    code, out, _ = call("--limit", "3", "incomp", "rinc", m("gbit_mx.json"), m("gbit_mz.json"))
    assert code == 66 and js(out)["error"] == "ProductTooLarge"


def test_float_mode_only_for_values():
    code, out, _ = call("--arith", "float", "sim", "runs", m("id.json"), m("trivial.json"))
    assert code == 0 and abs(js(out)["value"] - 1) < 1e-9 and js(out)["verified"] is False
    assert call("--arith", "float", "order", "test", m("id.json"), m("id.json"))[0] == 64


def test_options_after_subcommand():
    code, out, _ = call("demo", "gbit-rinc", "--seed", "4")
    assert code == 0 and js(out)["random_check"]["seed"] == 4


def test_seed_env_and_determinism(monkeypatch):
    monkeypatch.setenv("GPTM_SEED", "17")
    a = call("demo", "gbit-rinc")
    b = call("demo", "gbit-rinc")
    assert a == b and js(a[1])["random_check"]["seed"] == 17
    assert js(call("demo", "gbit-rinc", "--seed", "2")[1])["random_check"]["seed"] == 2


def test_gbit_incomparable_demo():
    code, out, _ = call("demo", "gbit-incomparable")
    o = js(out)
    assert code == 0 and o["incomparable"] is True
    assert o["MX_below_MZ"]["verdict"] == o["MZ_below_MX"]["verdict"] == "NotBelow"


@pytest.mark.skipif(shutil.which("gpt-measure") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["gpt-measure", "order", "test", str(m("gbit_mx.json")), str(m("gbit_mz.json"))], capture_output=True, text=True)
    assert p.returncode == 3 and json.loads(p.stdout)["verdict"] == "NotBelow"
