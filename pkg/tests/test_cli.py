import io
import json
import subprocess
import sys

import pytest

from orbichar import config
from orbichar.cli import main

SIGN = {"bundle": {"base": {"group": "C2", "preset": "point"},
                   "orbits": [{"basepoint": 0, "characters": [{"1": "1/2"}]}]}}


def invoke(capsys, monkeypatch, argv, doc=None):
    if doc is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(doc)))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_chi_on_a_point(capsys, monkeypatch):
    code, out, _ = invoke(capsys, monkeypatch, ["chi", "--k", "1"], {"group": "S3", "preset": "point"})
    assert code == 0
    result = json.loads(out)["result"]
    assert result["value"] == 3 and result["definition"] == "recursive"


def test_chi_both_definitions(capsys, monkeypatch):
    doc = {"gset": {"group": "C2", "preset": "trivial", "size": 2}}
    code, out, _ = invoke(capsys, monkeypatch, ["chi", "--k", "2", "--definition", "both"], doc)
    result = json.loads(out)["result"]
    assert code == 0 and result["passed"] and result["tuples"] == result["recursive"] == 8


def test_verify_tamanoi_partitions(capsys, monkeypatch):
    code, out, _ = invoke(capsys, monkeypatch, ["verify-tamanoi", "--k", "1", "--N", "6"],
                          {"group": "trivial", "preset": "point"})
    result = json.loads(out)["result"]
    assert code == 0 and result["passed"]
    assert result["lhs"] == [1, 1, 2, 3, 5, 7, 11]


def test_generalized_sign_point(capsys, monkeypatch):
    code, out, _ = invoke(capsys, monkeypatch, ["generalized", "--k", "1", "--phi", "1"], SIGN)
    assert code == 0 and json.loads(out)["result"]["text"] == "1 + L^(1/2)"


def test_pretty_goes_to_stderr(capsys, monkeypatch):
    code, out, err = invoke(capsys, monkeypatch, ["generalized", "--k", "1", "--pretty"], SIGN)
    assert code == 0
    json.loads(out)
    assert "1 + L^(1/2)" in err and "elapsed" in err


def test_identity_failure_exits_1(capsys, monkeypatch):
    code, out, _ = invoke(capsys, monkeypatch, ["verify-wreath-bundle", "--k", "2", "--phi", "1,1", "--N", "2"],
                          SIGN)
    assert code == 1 and json.loads(out)["result"]["passed"] is False


def test_wreath_bundle_k1_passes(capsys, monkeypatch):
    code, out, _ = invoke(capsys, monkeypatch, ["verify-wreath-bundle", "--k", "1", "--N", "3"], SIGN)
    assert code == 0 and json.loads(out)["result"]["passed"]


@pytest.mark.parametrize("doc,needle", [
    ({"gset": {"group": {"type": "cube"}, "preset": "point"}}, "gset.group.type"),
    ({"group": "C2", "cells": [{"dim": 0}] * 3, "action": {"0": [1, 2, 0]}}, "input.action"),
    ([1, 2], "input"),
])
def test_malformed_input_exits_2_and_names_the_field(capsys, monkeypatch, doc, needle):
    code, out, err = invoke(capsys, monkeypatch, ["chi"], doc)
    assert code == 2 and out == "" and needle in err


def test_invalid_json_and_options_exit_2(capsys, monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO("{not json"))
    assert main(["chi"]) == 2
    capsys.readouterr()
    assert invoke(capsys, monkeypatch, ["chi", "--k", "9"], {"group": "C2", "preset": "point"})[0] == 2
    assert invoke(capsys, monkeypatch, ["chi", "--N", "99"], {"group": "C2", "preset": "point"})[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_size_bound_hint(capsys, monkeypatch):
    code, _, err = invoke(capsys, monkeypatch, ["verify-tamanoi", "--N", "4", "--max-group-order", "20"],
                          {"group": "S3", "preset": "point"})
    assert code == 2 and "reduce n/N or group size" in err
    assert config.limits().max_group_order != 20


def test_class_and_series(capsys, monkeypatch):
    code, out, _ = invoke(capsys, monkeypatch, ["class"], {"group": "C2", "preset": "trivial", "size": 2})
    assert code == 0 and json.loads(out)["result"]["text"] == "2*[C2]"
    code, out, _ = invoke(capsys, monkeypatch, ["lambda-series", "--N", "3"],
                          {"group": "C2", "preset": "trivial", "size": 2})
    assert json.loads(out)["result"]["text"] == ["[trivial]", "2*[C2]", "[V4]", "0"]
    code, out, _ = invoke(capsys, monkeypatch, ["zeta-series", "--N", "2"], {"group": "trivial", "preset": "point"})
    assert json.loads(out)["result"]["text"] == ["[trivial]", "[trivial]", "[C2]"]
    code, out, _ = invoke(capsys, monkeypatch, ["class"], SIGN)
    assert json.loads(out)["result"]["text"] == "[C2, rank 1, ages 0, 1/2]"


def test_power_command(capsys, monkeypatch):
    code, out, _ = invoke(capsys, monkeypatch, ["power", "--N", "4"],
                          {"ring": "Z", "series": [-1], "exponent": -2})
    assert code == 0 and json.loads(out)["result"]["coeffs"] == [1, 2, 3, 4, 5]
    code, out, _ = invoke(capsys, monkeypatch, ["power", "--N", "3"],
                          {"ring": "fgr", "series": [{"group": "trivial", "preset": "point"}],
                           "exponent": {"group": "C2", "preset": "trivial", "size": 2}})
    result = json.loads(out)["result"]
    assert result["effective"] and result["text"] == ["[trivial]", "2*[C2]", "[V4]", "0"]
    code, _, err = invoke(capsys, monkeypatch, ["power"], {"ring": "Q", "series": [], "exponent": 1})
    assert code == 2 and "input.ring" in err


def test_verify_induction_and_divergence(capsys, monkeypatch):
    doc = dict(SIGN, supergroup="S3")
    code, out, _ = invoke(capsys, monkeypatch, ["verify-induction", "--k", "2", "--phi", "1,1"], doc)
    assert code == 0 and all(row["passed"] for row in json.loads(out)["result"]["generalized"])
    code, out, _ = invoke(capsys, monkeypatch, ["divergence"], {"group": "C2", "preset": "trivial", "size": 2})
    assert code == 0 and json.loads(out)["result"]["differ"]
    code, out, _ = invoke(capsys, monkeypatch, ["divergence"], {"group": "C2", "preset": "regular"})
    assert code == 1


def test_verify_power_axioms_small(capsys, monkeypatch):
    code, out, _ = invoke(capsys, monkeypatch, ["verify-power-axioms", "--N", "2", "--seed", "3"])
    assert code == 0 and json.loads(out)["result"]["passed"]


def test_input_file(tmp_path, capsys):
    path = tmp_path / "x.json"
    path.write_text(json.dumps({"group": "S3", "preset": "regular"}))
    assert main(["chi", "--k", "2", "--input", str(path)]) == 0
    assert json.loads(capsys.readouterr().out)["result"]["value"] == 1
    assert main(["chi", "--input", str(tmp_path / "missing.json")]) == 2


def test_output_is_byte_identical_across_processes(tmp_path):
    path = tmp_path / "sign.json"
    path.write_text(json.dumps(SIGN))
    cmd = [sys.executable, "-m", "orbichar", "verify-wreath-bundle", "--k", "1", "--N", "3",
           "--input", str(path)]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] and runs[0]
