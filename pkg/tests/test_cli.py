import json
import subprocess
import sys

import pytest

from equiloc.cli import RunConfig, InputError, run
from equiloc.localize import flip_sign, model_to_dict
from equiloc.models import cp2


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, *argv)
    return code, json.loads(out) if out.strip() else None, err


def test_localize_golden(capsys):
    code, out, _ = call(capsys, "localize", "--model", "builtin:s2", "--integrand", "sympower:1")
    assert code == 0
    assert json.loads(out) == {"result": "4*pi", "intermediate_sum": "-2"}


def test_localize_from_path(capsys, tmp_path):
    path = tmp_path / "s2.json"
    path.write_text(json.dumps({"dim": 2, "rank": 1, "points": [
        {"id": "n", "mu": ["1"], "weights": [["-1"]], "sign": 1},
        {"id": "s", "mu": ["-1"], "weights": [["1"]], "sign": 1}]}))
    code, out, _ = call_json(capsys, "localize", "--model", str(path), "--integrand", "sympower:1", "--check")
    assert code == 0 and out["result"] == "4*pi" and all(out["checks"].values())


def test_kirillov_golden(capsys):
    code, out, _ = call_json(capsys, "kirillov", "--type", "A", "--rank", "1", "--lambda", "2")
    assert code == 0
    assert out["equal"] is True and out["lhs"] == out["rhs"]


def test_kirillov_check(capsys):
    code, out, _ = call_json(capsys, "kirillov", "--type", "A", "--rank", "2", "--lambda", "1,1", "--check")
    assert code == 0 and out["checks"]["ok"]


def test_gkm_golden(capsys):
    code, out, _ = call_json(capsys, "gkm", "--graph", "builtin:s2_t1", "--dims", "0..4")
    assert code == 0 and out == {"dims": [1, 2, 2, 2, 2]}


def test_gkm_poincare(capsys):
    code, out, _ = call_json(capsys, "gkm", "--graph", "builtin:cp2", "--poincare", "8", "--check")
    assert code == 0 and out["poincare"] == [1, 1, 1] and out["rank"] == 3


def test_character(capsys):
    code, out, _ = call_json(capsys, "character", "--type", "A", "--rank", "2", "--lambda", "1,0",
                             "--at", "0.3,0.1,-0.4", "--check")
    assert code == 0 and out["dimension"] == 3 and out["checks"]["ok"]


def test_pfaffian(capsys):
    code, out, _ = call_json(capsys, "pfaffian", "--matrix", '[["0","-3"],["3","0"]]', "--check")
    assert code == 0 and out["pfaffian"] == "3" and all(out["checks"].values())


def test_dh_emit(capsys, tmp_path):
    target = tmp_path / "density.json"
    code, out, _ = call_json(capsys, "dh", "--model", "builtin:s2", "--emit", str(target), "--check")
    assert code == 0 and out["checks"]["fourier_ok"]
    emitted = json.loads(target.read_text())
    assert emitted["total_mass"] == "4*pi" and emitted["pieces"][0]["coeffs"] == ["2*pi"]


def test_not_polynomial_exit_1(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(model_to_dict(flip_sign(cp2(), "p1"))))
    code, out, _ = call_json(capsys, "localize", "--model", str(path), "--integrand", "sympower:1")
    assert code == 1 and out["error"] == "NotPolynomial" and out["witness"]


@pytest.mark.parametrize("argv", [
    ["localize", "--model", "builtin:missing"],
    ["localize", "--model", "builtin:s2", "--integrand", "cubic"],
    ["character", "--type", "A", "--rank", "1", "--lambda", "1", "--at", "0.1,0.1"],
    ["character", "--type", "A", "--rank", "1", "--lambda", "x", "--at", "0.1,-0.1"],
    ["pfaffian", "--matrix", "[[0, 1], [1, 0]]"],
    ["gkm", "--graph", "builtin:s2_t1", "--dims", "4..1"],
    ["dh", "--model", "builtin:cp2"],
    ["nosuch"],
])
def test_malformed_input_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2 and err


def test_config_strict(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"format": "json", "surprise": True}))
    code, _, err = call(capsys, "gkm", "--graph", "builtin:cp2", "--config", str(cfg))
    assert code == 2 and "surprise" in err
    with pytest.raises(InputError):
        RunConfig.from_dict({"tolerances": {"made_up": 1.0}})


def test_config_supplies_inputs(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"subcommand": "gkm", "inputs": {"graph": "builtin:s2_t1"}, "format": "csv"}))
    code, out, _ = call(capsys, "gkm", "--graph", "builtin:s2_t1", "--config", str(cfg), "--dims", "0..2")
    assert code == 0 and out == "key,value\ndims,1;2;2\n"


def test_thread_env(capsys, monkeypatch):
    monkeypatch.setenv("EQUILOC_THREADS", "0")
    code, _, _ = call(capsys, "gkm", "--graph", "builtin:s2_t1")
    assert code == 2
    monkeypatch.setenv("EQUILOC_THREADS", "4")
    code, _, _ = call(capsys, "gkm", "--graph", "builtin:s2_t1")
    assert code == 0


def test_text_format(capsys):
    code, out, _ = call(capsys, "localize", "--model", "builtin:s2", "--format", "text")
    assert code == 0 and out == "result: 4*pi\nintermediate_sum: -2\n"


def test_byte_determinism(capsys):
    argv = ["kirillov", "--type", "A", "--rank", "2", "--lambda", "1,0", "--check", "--seed", "3"]
    assert call(capsys, *argv)[1] == call(capsys, *argv)[1]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "equiloc", "gkm", "--graph", "builtin:cp2", "--dims", "0..2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"dims": [1, 3, 6]}
