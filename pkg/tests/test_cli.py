import json
import subprocess
import sys

import pytest

from smodpres.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_emit_pmod_json(capsys):
    code, out, _ = run(["emit", "-f", "pmod", "--m", "4", "--format", "json"], capsys)
    data = json.loads(out)
    assert code == 0 and data["generators"] == ["t[1,2]", "t[2,3]"] and data["relators"] == []


def test_emit_lmod_boundary_text(capsys):
    code, out, _ = run(["emit", "-f", "lmod-boundary", "--n", "1"], capsys)
    lines = out.splitlines()
    assert code == 0
    assert lines[1].split()[1:] == ["h[1]", "t[1,2]", "t[1,3]", "t[2,3]"]
    assert lines[3].startswith("Comm")


def test_emit_smod_marked_has_power(capsys):
    code, out, _ = run(["emit", "-f", "smod-marked", "--n", "1", "--k", "3", "--format", "json"], capsys)
    assert "t[1,3]^3" in [rel["word"] for rel in json.loads(out)["relators"]]


def test_emit_algebra(capsys):
    code, out, _ = run(["emit", "-f", "wstar", "--n", "2", "--format", "algebra"], capsys)
    assert code == 0 and out.startswith("F := FreeGroup(")


@pytest.mark.parametrize("argv", [
    ["verify", "-f", "lmod-closed", "--n", "2"],
    ["verify", "-f", "smod-closed", "--n", "1", "--k", "3", "--engine", "cover"],
    ["verify", "-f", "smod-marked", "--n", "2", "--k", "4", "--engine", "both", "--format", "json"],
])
def test_verify_passes(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0 and "FAIL" not in out


def test_verify_injected_corruption(capsys):
    code, out, _ = run(["verify", "-f", "lmod-closed", "--n", "1", "--inject-corrupt", "--seed", "3"], capsys)
    assert code == 2 and "# witness" in out


def test_verify_output_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code, out, _ = run(["verify", "-f", "lmod-marked", "--n", "1", "-o", str(target)], capsys)
    assert code == 0 and out == "" and " OK " in target.read_text()


@pytest.mark.parametrize("argv,expect", [
    (["h1", "-f", "lmod-closed", "--n", "3"], "Z^1 (+) Z_2 (+) Z_2"),
    (["h1", "-f", "smod-marked", "--n", "2", "--k", "3"], "Z^2 (+) Z_6"),
    (["h1", "-f", "smod-boundary", "--n", "2", "--k", "4", "--expect"], "Z^3"),
])
def test_h1(argv, expect, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0 and out.strip() == expect


@pytest.mark.parametrize("word,n,expect", [("s[1]", 1, "not-liftable (1 2)"),
                                           ("h[1]", 1, "preserving (1 3)"),
                                           ("r", 2, "reversing")])
def test_liftable(word, n, expect, capsys):
    code, out, _ = run(["liftable", word, "--n", str(n)], capsys)
    assert code == 0 and out.startswith(expect)


def test_lemmas_and_report(capsys):
    code, out, _ = run(["lemmas", "--n", "1"], capsys)
    assert code == 0 and "FAIL" not in out
    code, out, _ = run(["report", "--n", "1"], capsys)
    assert code == 0 and all(line.endswith("OK") for line in out.splitlines())


@pytest.mark.parametrize("argv", [
    ["liftable", "h[1", "--n", "1"],
    ["emit", "-f", "smod-closed", "--n", "1", "--k", "2"],
    ["emit", "--n", "1"],
    ["verify", "-f", "lmod-closed", "--n", "1", "--engine", "cover"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 1 and err.startswith("smodpres:")


def test_bad_command_exits_1():
    proc = subprocess.run([sys.executable, "-m", "smodpres.cli", "bogus"], capture_output=True)
    assert proc.returncode == 1
