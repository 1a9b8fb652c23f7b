import io
import json
import subprocess
import sys


from affdemazure.affring import CharElement
from affdemazure.cli import main
from affdemazure.demazure import clear_memo


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_char_examples():
    code, out = run("char", "--type", "A1", "--weight", "2")
    assert code == 0
    assert out.splitlines() == ["e^(2)", "e^0", "e^(-2)", "dim 3"]
    code, out = run("char", "--type", "A2", "--weight", "0,0")
    assert out.splitlines() == ["e^0", "dim 1"]
    code, out = run("char", "--type", "G2", "--weight", "1,0")
    assert out.splitlines()[-1] == "dim 7"


def test_demazure_graded():
    code, out = run("demazure", "--type", "A1", "--level", "1", "--weight", "2", "--graded",
                    "--no-cache")
    assert code == 0
    assert out.splitlines() == ["q^0: dim 3", "q^1: dim 1", "total dim 4"]
    code, out = run("demazure", "--type", "A2", "--level", "2", "--weight", "0,0", "--graded",
                    "--no-cache")
    assert out.splitlines() == ["q^0: dim 1", "total dim 1"]


def test_demazure_json_round_trip(tmp_path):
    clear_memo()
    code, out = run("demazure", "--type", "A2", "--level", "1", "--weight", "1,1",
                    "--format", "json", "--cache-dir", str(tmp_path))
    assert code == 0
    ch = CharElement.from_json(out)
    assert ch.dim() == 9
    assert json.loads(ch.to_json()) == json.loads(out)
    assert any(tmp_path.iterdir())


def test_latex_output():
    code, out = run("demazure", "--type", "A1", "--level", "1", "--weight", "2", "--graded",
                    "--format", "latex", "--no-cache")
    assert out.strip() == "q^{0}e^{(2)} + q^{0}e^{(0)} + q^{0}e^{(-2)} + q^{1}e^{(0)}"
    code, out = run("char", "--type", "A1", "--weight", "1", "--format", "latex")
    assert out.strip() == "e^{(1)} + e^{(-1)}"


def test_gen_demazure():
    code, out = run("gen-demazure", "--type", "A1", "--factor", "t:2/0/1",
                    "--factor", "t:2/2/2", "--format", "json")
    assert code == 0
    # factors realize V^{3,3theta}_{2,theta}: dim D(3, 3theta) * dim D(2, theta) = 16 * 3
    assert CharElement.from_json(out).dim() == 16 * 3


def test_gen_demazure_errors():
    assert run("gen-demazure", "--type", "A1", "--factor", "a:1/0/1", "--factor", "a:1/0/1")[0] == 2
    assert run("gen-demazure", "--type", "A1", "--factor", "t:1/0/1")[0] == 2
    assert run("gen-demazure", "--type", "A1", "--factor", "bogus")[0] == 2


def test_usage_errors():
    assert run("char", "--type", "A2", "--weight", "1,x")[0] == 2
    assert run("char", "--type", "Z9", "--weight", "1")[0] == 2
    assert run("char", "--type", "A2", "--weight", "-1,0")[0] == 2
    assert run("verify")[0] == 2
    assert run("verify", "--suite", "nonsense")[0] == 2
    assert run("verify", "--suite", "dlk", "--set", "bogus=1")[0] == 2
    assert run("frobnicate")[0] == 2


def test_verify_examples():
    code, out = run("verify", "--suite", "dlk", "--type", "A1")
    assert code == 0
    assert out.splitlines()[1].split() == ["dlk", "9", "9", "0"]
    code, out = run("verify", "--suite", "dlk", "--type", "A1", "--self-test")
    assert code == 1
    assert "FAIL" in out and "fault detected in 9 of 9" in out


def test_verify_grid_file(tmp_path):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"max_k": 1}))
    code, out = run("verify", "--suite", "dlk", "--type", "A1", "--grid", str(grid))
    assert code == 0 and out.splitlines()[1].split()[1] == "2"
    code, out = run("verify", "--suite", "dlk", "--type", "A1", "--set", "max_k=2")
    assert out.splitlines()[1].split()[1] == "5"


def test_verify_json_lines_are_deterministic():
    argv = ["verify", "--suite", "xi", "--suite", "S", "--format", "json", "--seed", "7"]
    a, b = run(*argv), run(*argv)
    assert a == b and a[0] == 0
    lines = [json.loads(x) for x in a[1].splitlines()]
    assert all(x["seed"] == 7 and x["passed"] for x in lines)
    assert "seconds" not in lines[0]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "affdemazure", "char", "--type", "A1",
                           "--weight", "1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.endswith("dim 2\n")
