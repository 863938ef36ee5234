import json
import subprocess
import sys

import pytest

from partialrep.cli import main
from partialrep.verifier import Report

SPECS = {
    "golden": {"n": 2, "forbidden": [[2, 2]]},
    "full": {"n": 2, "forbidden": []},
    "cube": {"n": 2, "forbidden": [[1, 1, 1]]},
    "markov": {"markov": [[1, 1], [1, 0]]},
}
FAST = ["--max-word-len", "3", "--max-pair-len", "4", "--prefix-bound", "2", "--cycle-bound", "2"]


@pytest.fixture
def spec(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(SPECS[name]))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


@pytest.mark.parametrize("word,answer", [("g1 g2", "true"), ("g2 g2", "false"), ("e", "true")])
def test_member(spec, capsys, word, answer):
    assert run(capsys, "--lang", spec("golden"), "--cmd", "member", "--word", word)[:2] == (0, answer)


def test_lsets(spec, capsys):
    code, out, _ = run(capsys, "--lang", spec("golden"), "--cmd", "lsets", "--mu", "g2")
    assert code == 0 and out.splitlines() == ["k=1: {g2}", "empty for k >= 2"]
    code, out, _ = run(capsys, "--lang", spec("full"), "--cmd", "lsets", "--mu", "g1")
    assert out.splitlines()[0] == "(all empty)"
    code, out, _ = run(capsys, "--lang", spec("cube"), "--cmd", "lsets", "--mu", "g1")
    assert out.splitlines() == ["k=2: {g1 g1}", "empty for k >= 3"]


def test_apply(spec, capsys):
    g = spec("golden")
    assert run(capsys, "--lang", g, "--cmd", "apply", "--expr", "S1*", "--vector", "e|g1 g2")[:2] == (0, "e|g2 g1")
    assert run(capsys, "--lang", g, "--cmd", "apply", "--expr", "S2", "--vector", "e|g2 g1")[:2] == (0, "0")
    assert run(capsys, "--lang", g, "--cmd", "apply", "--expr", "I", "--vector", "g2|g1")[:2] == (0, "g2|g1")
    code, out, _ = run(capsys, "--lang", g, "--cmd", "apply", "--expr", "2 I - S1 S1*", "--vector", "e|g1 g2")
    assert out == "e|g1 g2"


@pytest.mark.parametrize("argv", [
    ["--cmd", "member", "--word", "g3"],
    ["--cmd", "member", "--word", "g1^-1"],
    ["--cmd", "member"],
    ["--cmd", "lsets", "--mu", "g2 g2"],
    ["--cmd", "apply", "--expr", "S1 +", "--vector", "e|g1"],
    ["--cmd", "apply", "--expr", "S1", "--vector", "e|g2"],
    ["--cmd", "apply", "--expr", "S1", "--vector", "g1"],
    ["--cmd", "verify", "--max-word-len", "0"],
])
def test_bad_input_exits_2(spec, capsys, argv):
    code, _, err = run(capsys, "--lang", spec("golden"), *argv)
    assert code == 2 and err.startswith("error:")


def test_bad_file_exits_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "--lang", str(bad), "--cmd", "verify")[0] == 2
    assert run(capsys, "--lang", str(tmp_path / "missing.json"), "--cmd", "verify")[0] == 2


def test_verify_exit_codes(spec, capsys):
    code, out, _ = run(capsys, "--lang", spec("golden"), "--cmd", "verify", *FAST)
    assert code == 0 and "overall: pass" in out
    code, out, _ = run(capsys, "--lang", spec("golden"), "--cmd", "verify", "--no-junction-check", *FAST)
    assert code == 1 and "overall: fail" in out


def test_verify_json_round_trips(spec, capsys):
    code, out, _ = run(capsys, "--lang", spec("markov"), "--cmd", "verify", "--format", "json", "--seed", "3", *FAST)
    data = json.loads(out)
    assert code == 0 and data["status"] == "pass"
    assert data["config"]["seed"] == 3 and data["config"]["prefix_bound"] == 2
    assert Report.from_dict(data).to_json() == out
    assert "markov" in data["suites"]


def test_module_entry_point(spec):
    proc = subprocess.run([sys.executable, "-m", "partialrep", "--lang", spec("golden"),
                           "--cmd", "member", "--word", "g2 g1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "true"
