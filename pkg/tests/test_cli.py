from __future__ import annotations

import json
import subprocess
import sys
from fractions import Fraction

import pytest

from brauerfold.cli import EXIT_FAIL, EXIT_OK, EXIT_USAGE, main
from brauerfold.presentations import presentation_for


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_roots_json(capsys):
    code, out, _ = run(capsys, "roots", "--type", "D4")
    d = json.loads(out)
    assert code == EXIT_OK and d["type"] == "D4" and len(d["positive_roots"]) == 12
    assert [Fraction(c) for c in d["simple_roots"][0]] == [1, 1, 0, 0]
    assert max(d["heights"]) == 5


def test_g2_verify(capsys):
    code, out, _ = run(capsys, "g2", "verify")
    d = json.loads(out)
    assert code == EXIT_OK and d["ok"] and d["basis_size"] == 39


def test_adm_closure(capsys):
    code, out, _ = run(capsys, "adm", "closure", "--type", "D4", "--set", "a1,a2,a4")
    d = json.loads(out)
    assert code == EXIT_OK and d["closure_size"] == 4
    assert d["closure"] == "{a1, a2, a4, a1+a2+2a3+a4}"


def test_adm_closure_vector_syntax(capsys):
    code, out, _ = run(capsys, "adm", "closure", "--type", "D4", "--set", "[1,0,0,0],[0,1,0,0],a4")
    assert code == EXIT_OK and json.loads(out)["closure_size"] == 4


def test_adm_hasse_dot(capsys):
    code, out, _ = run(capsys, "adm", "hasse", "--type", "A4", "--set", "a1,a3", "--format", "dot")
    assert code == EXIT_OK and out.startswith("digraph")
    sink = [ln for ln in out.splitlines() if "peripheries=2" in ln]
    assert len(sink) == 1 and "{(1,1,1,0),(0,1,1,1)}" in sink[0]


def test_adm_orbits_and_check(capsys):
    code, out, _ = run(capsys, "adm", "orbits", "--type", "D4")
    assert code == EXIT_OK and len(json.loads(out)["orbits"]) == 6
    code, out, _ = run(capsys, "adm", "check", "--type", "D4", "--set", "a1,a2,a4")
    d = json.loads(out)
    assert code == EXIT_OK and d["agree"] and d["closure-form"] is False


def test_weyl(capsys):
    code, out, _ = run(capsys, "weyl", "stabilizer", "--type", "G2", "--set", "b0")
    d = json.loads(out)
    assert code == EXIT_OK and d["order"] == 4 and d["generators"] == ["r0", "r1 r0 r1 r0 r1"]
    code, out, _ = run(capsys, "weyl", "orbit", "--type", "A4", "--set", "a1+a2,a4")
    assert code == EXIT_OK and json.loads(out)["size"] == 15


def test_action(capsys):
    code, out, _ = run(capsys, "action", "apply", "--type", "D4", "--word", "E3 R1", "--set", "a1")
    assert code == EXIT_OK and json.loads(out)["result"] == "{a3}"
    code, out, _ = run(capsys, "action", "check", "--type", "D4", "--derived")
    d = json.loads(out)
    assert code == EXIT_OK and d["ok"] and d["mismatches"] == []


def test_prove(capsys, tmp_path):
    code, out, _ = run(capsys, "prove", "--presentation", "g2", "--lhs", "e1 e0", "--rhs", "r0 r1 e0", "--max-depth", "24")
    d = json.loads(out)
    assert code == EXIT_OK and d["found"] and len(d["trace"]["steps"]) == 2
    code, out, _ = run(capsys, "prove", "--lhs", "e0 e1 e0", "--rhs", "delta delta e0", "--format", "text")
    assert code == EXIT_OK and out.startswith("proved: lhs = δ^0 rhs")
    code, out, _ = run(capsys, "prove", "--lhs", "e0", "--rhs", "e1", "--max-depth", "4", "--max-width", "1000")
    assert code == EXIT_FAIL and json.loads(out)["found"] is False

    path = tmp_path / "g2.json"
    path.write_text(presentation_for("G2").dumps(), encoding="utf-8")
    code, out, _ = run(capsys, "prove", "--presentation", str(path), "--lhs", "e1 e0", "--rhs", "r0 r1 e0")
    assert code == EXIT_OK


def test_g2_table_and_normalize(capsys, tmp_path):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "g2", "table", "--format", "csv", "--out", str(target))
    lines = target.read_text(encoding="utf-8").splitlines()
    assert code == EXIT_OK and out == "" and lines[0] == "i,j,delta_exp,k" and len(lines) == 39 * 39 + 1
    code, out, _ = run(capsys, "g2", "normalize", "--word", "r1 e0 r1 e0")
    d = json.loads(out)
    assert d["delta_exp"] == 2 and d["normal_form"] == "r1 e0"


def test_phi(capsys):
    code, out, _ = run(capsys, "phi", "verify", "--method", "action")
    assert code == EXIT_OK and json.loads(out)["ok"]
    code, out, _ = run(capsys, "phi", "census")
    assert code == EXIT_OK and json.loads(out)["projection_onto_folded"]


def test_deterministic_output(capsys):
    a = run(capsys, "adm", "hasse", "--type", "D4", "--set", "a1,a2", "--format", "dot")
    b = run(capsys, "adm", "hasse", "--type", "D4", "--set", "a1,a2", "--format", "dot")
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["adm", "closure", "--type", "D4", "--set", "a9"],
        ["adm", "closure", "--type", "D4", "--set", "a1,a3"],
        ["adm", "closure", "--type", "D4"],
        ["adm", "orbits", "--type", "E8"],
        ["adm", "orbits", "--format", "csv"],
        ["roots", "--format", "dot"],
        ["g2", "normalize", "--word", "R3"],
        ["prove", "--lhs", "e0", "--rhs", "E3"],
        ["phi", "verify", "--method", "magic"],
        ["action", "apply", "--type", "D4", "--word", "E3", "--set", "a1,a2,a4"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_USAGE and out == "" and err.startswith("brauerfold: error:")


@pytest.mark.parametrize("argv", [["nosuch"], ["prove", "--max-depth", "0"], ["adm", "sideways"], []])
def test_argparse_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == EXIT_USAGE


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "brauerfold", "g2", "normalize", "--word", "e0 e0", "--format", "text"],
        capture_output=True,
        text=True,
    )
    assert out.returncode == 0 and out.stdout.strip() == "δ^3 e0"
