"""End-to-end tests of the command-line interface and report contracts."""

import json
import math
import re
import subprocess
import sys

import numpy as np
import pytest

from seqclass.cli import main
from seqclass._jsonio import dumps, multiop_to_dict, parse_space
from seqclass.multiop import diag_operator
from seqclass.spaces import INF


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_wall_time(text: str) -> str:
    return re.sub(r'"wall_time_s": [^,\n]+', '"wall_time_s": X', text)


def test_suite_list_names(capsys):
    code, out, _ = run_cli(["suite", "list"], capsys)
    names = out.split()
    assert code == 0
    assert len(names) == 10
    assert "weak1-stability" in names and "holder-identity" in names


def test_suite_list_json(capsys):
    code, out, _ = run_cli(["suite", "list", "--json"], capsys)
    assert code == 0
    assert len(json.loads(out)) == 10


def test_unknown_flag_exits_2():
    proc = subprocess.run(
        [sys.executable, "-m", "seqclass.cli", "suite", "list", "--bogus"],
        capture_output=True,
    )
    assert proc.returncode == 2


def test_unknown_suite_exits_2(capsys):
    code, _, err = run_cli(["suite", "run", "no-such-suite"], capsys)
    assert code == 2
    assert "unknown suite" in err


def test_norm_command_weak1(capsys):
    code, out, _ = run_cli(
        ["norm", "--class", "weak", "--p", "1", "--space", "l2:2",
         "--seq", "[[1,0],[0,1]]"],
        capsys,
    )
    assert code == 0
    assert f"{math.sqrt(2):.12g}" in out


def test_norm_command_json(capsys):
    code, out, _ = run_cli(
        ["norm", "--class", "rad", "--space", "l2:2", "--seq", "[[1,0],[0,1]]",
         "--json"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["bracket"]["exact"] is True
    assert doc["bracket"]["lower"] == pytest.approx(math.sqrt(2), rel=1e-12)


def test_norm_command_cohen_p1(capsys):
    code, out, _ = run_cli(
        ["norm", "--class", "cohen", "--p", "1", "--space", "l2:2",
         "--seq", "[[1,0],[0,1]]", "--json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["bracket"]["lower"] == pytest.approx(2.0, rel=1e-12)


def test_norm_malformed_input_exits_2(capsys):
    code, _, err = run_cli(
        ["norm", "--class", "weak", "--p", "1", "--space", "l2:2",
         "--seq", "not json"],
        capsys,
    )
    assert code == 2
    assert "error" in err


def test_norm_requires_exponent(capsys):
    code, _, err = run_cli(
        ["norm", "--class", "weak", "--space", "l2:2", "--seq", "[[1,0]]"], capsys
    )
    assert code == 2


def test_ideal_command(tmp_path, capsys):
    D = diag_operator(2, 4, 2)
    op_path = tmp_path / "op.json"
    op_path.write_text(dumps(multiop_to_dict(D)))
    out_path = tmp_path / "est.json"
    csv_path = tmp_path / "curve.csv"
    code, out, _ = run_cli(
        ["ideal", "--op-file", str(op_path), "--in-class", "weak", "--in-p", "2",
         "--k-max", "4", "--seed", "3", "--json",
         "--out", str(out_path), "--csv", str(csv_path)],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["bracket"]["lower"] >= 2.0 - 1e-6  # sqrt(4) via the basis witness
    saved = json.loads(out_path.read_text())
    assert saved["best_k"] == doc["best_k"]
    lines = csv_path.read_text().strip().splitlines()
    assert lines[0] == "suite,case,k,ratio"
    assert len(lines) == 1 + 4


def test_ideal_command_identity_holder(tmp_path, capsys):
    from seqclass.multiop import scalar_multiplication

    op_path = tmp_path / "id.json"
    op_path.write_text(dumps(multiop_to_dict(scalar_multiplication(2))))
    code, out, _ = run_cli(
        ["ideal", "--op-file", str(op_path), "--in-class", "strong", "--in-p", "2",
         "--out-class", "strong", "--out-p", "1", "--k-max", "3", "--json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["bracket"]["lower"] == pytest.approx(1.0, abs=1e-9)


def test_ideal_zero_operator(tmp_path, capsys):
    D = diag_operator(2, 2, 2)
    doc = multiop_to_dict(D)
    doc["coeffs"] = [0.0] * len(doc["coeffs"])
    op_path = tmp_path / "zero.json"
    op_path.write_text(dumps(doc))
    code, out, _ = run_cli(
        ["ideal", "--op-file", str(op_path), "--in-class", "strong", "--in-p", "1",
         "--json"],
        capsys,
    )
    assert code == 0
    assert json.loads(out)["bracket"]["lower"] == 0.0


def test_ideal_bad_shape_exits_2(tmp_path, capsys):
    doc = multiop_to_dict(diag_operator(2, 2, 2))
    doc["shape"] = [2, 2, 3]
    op_path = tmp_path / "bad.json"
    op_path.write_text(dumps(doc))
    code, _, err = run_cli(
        ["ideal", "--op-file", str(op_path), "--in-class", "strong", "--in-p", "1"],
        capsys,
    )
    assert code == 2


def test_suite_run_growth_and_exit_zero(tmp_path, capsys):
    out_path = tmp_path / "growth.json"
    csv_path = tmp_path / "growth.csv"
    code, out, _ = run_cli(
        ["suite", "run", "growth", "--serial", "--out", str(out_path),
         "--csv", str(csv_path)],
        capsys,
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["summary"]["violations"] == 0
    rows = csv_path.read_text().strip().splitlines()
    assert rows[0] == "suite,case,k,ratio"
    got = {}
    for line in rows[1:]:
        suite, case, k, ratio = line.split(",")
        if case == "growth-p2-n2":
            got[int(k)] = float(ratio)
    assert got[16] == pytest.approx(4.0, abs=1e-6)


def test_suite_report_determinism(tmp_path, capsys):
    texts = []
    for i in range(2):
        path = tmp_path / f"r{i}.json"
        code, _, _ = run_cli(
            ["suite", "run", "decoupling", "--serial", "--seed", "5",
             "--out", str(path)],
            capsys,
        )
        assert code == 0
        texts.append(strip_wall_time(path.read_text()))
    assert texts[0] == texts[1]


def test_suite_config_file_round_trip(tmp_path, capsys):
    cfg = {"suite": "growth", "seed": 9,
           "curves": [{"p": "2", "n": 2, "k_list": [1, 4]}]}
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg))
    out_path = tmp_path / "rep.json"
    code, _, _ = run_cli(
        ["suite", "run", str(cfg_path), "--serial", "--out", str(out_path)], capsys
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["seed"] == 9
    assert doc["config"]["curves"][0]["k_list"] == [1, 4]


def test_suite_config_unknown_key_exits_2(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"suite": "growth", "bogus": 1}))
    code, _, err = run_cli(["suite", "run", str(cfg_path)], capsys)
    assert code == 2


def test_case_records_recompute_verdict(tmp_path, capsys):
    out_path = tmp_path / "rep.json"
    code, _, _ = run_cli(
        ["suite", "run", "growth", "--serial", "--out", str(out_path)], capsys
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    for case in doc["cases"]:
        law = case["law"]
        p = law.split("1/")[1].rstrip(")")
        num, _, den = p.partition("/")
        pf = float(num) / float(den or 1)
        worst = max(abs(r - k ** (1 / pf)) for k, r in case["curve"])
        assert (worst <= 1e-6) == case["passed"]


def test_parse_space_literals():
    s = parse_space("l2:3")
    assert s.dim == 3 and float(s.q) == 2.0
    assert parse_space("linf:4").q == INF
    from fractions import Fraction

    assert parse_space("l4/3:2").q == Fraction(4, 3)
    with pytest.raises(ValueError):
        parse_space("x2:3")


def test_float_formatting_17_digits():
    text = dumps({"x": 1 / 3})
    assert "0.33333333333333331" in text
    assert json.loads(text)["x"] == 1 / 3  # lossless round-trip


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "seqclass.cli", "--version"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "seqclass" in proc.stdout


def test_env_thread_cap_preserves_report(tmp_path):
    env_out, serial_out = None, None
    import os

    for mode, path_name in (("2", "par.json"), (None, "ser.json")):
        env = dict(os.environ)
        if mode:
            env["SEQCLASS_THREADS"] = mode
        path = tmp_path / path_name
        proc = subprocess.run(
            [sys.executable, "-m", "seqclass.cli", "suite", "run", "decoupling",
             "--seed", "7", "--out", str(path)] + ([] if mode else ["--serial"]),
            capture_output=True,
            env=env,
        )
        assert proc.returncode == 0
    par = strip_wall_time((tmp_path / "par.json").read_text())
    ser = strip_wall_time((tmp_path / "ser.json").read_text())
    assert par == ser
