import subprocess
import sys

import pytest

from cantorkit.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_diag_classical_csv(capsys):
    code, out, _ = call(capsys, "diag", "classical", "--builder", "identity", "--horizon", "8", "--format", "csv")
    assert (code, out) == (0, "0,0,0,0,0,0,0,0\n")


def test_verify_escape_counterexample(capsys):
    code, out, _ = call(capsys, "verify", "escape", "--builder", "counterexample", "--perm", "t(0,1)", "--variant", "row")
    assert code == 1
    assert "row 0: proven_equal" in out


def test_verify_escape_transversal_passes(capsys):
    code, out, _ = call(capsys, "verify", "escape", "--builder", "counterexample", "--perm", "t(0,1)",
                        "--variant", "transversal", "--format", "csv", "--header")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "row,kind,position,horizon" and len(lines) == 65


def test_pair_unpair(capsys):
    assert call(capsys, "pair", "1", "2")[:2] == (0, "8\n")
    assert call(capsys, "unpair", "8")[:2] == (0, "1 2\n")
    assert call(capsys, "unpair", "8", "--format", "csv")[:2] == (0, "1,2\n")


def test_perm_commands(capsys):
    assert call(capsys, "perm", "unrank", "3")[:2] == (0, "[1,2,0]\n")
    assert call(capsys, "perm", "rank", "t(0,1)*t(1,2)")[:2] == (0, "4\n")
    assert call(capsys, "perm", "rank", "[1,0,2]")[:2] == (0, "1\n")


def test_matrix_marks_diagonal(capsys):
    code, out, _ = call(capsys, "matrix", "--builder", "identity", "--rows", "3", "--horizon", "4")
    assert code == 0
    assert out.splitlines() == ["0 |[1] 0  0  0", "1 | 0 [1] 0  0", "2 | 0  0 [1] 0"]
    code, out, _ = call(capsys, "matrix", "--builder", "doubly_periodic", "--matrix", "01/10",
                        "--rows", "2", "--horizon", "3", "--format", "csv", "--one-based", "--header")
    assert out == "c1,c2,c3\n0,1,0\n1,0,1\n"


def test_prefix_inputs(capsys, tmp_path):
    assert call(capsys, "prefix", "--seq", "i mod 2", "--horizon", "4", "--format", "csv")[1] == "0,1,0,1\n"
    assert call(capsys, "prefix", "--builder", "binary_naturals", "--row", "5", "--horizon", "4",
                "--format", "csv")[1] == "1,0,1,0\n"
    f = tmp_path / "x.sdl"
    f.write_text("enum: eq(k, i + 1)\n")
    assert call(capsys, "prefix", "--file", str(f), "--row", "2", "--horizon", "4", "--format", "csv")[1] == "0,1,0,0\n"
    out = tmp_path / "o.csv"
    assert call(capsys, "diag", "z", "--file", str(f), "--horizon", "3", "--format", "csv", "-o", str(out))[0] == 0
    assert out.read_text() == "0,1,1\n"  # a(0,0), a(1,0), a(2,1)


def test_tower_and_xinf(capsys):
    code, out, _ = call(capsys, "tower", "--builder", "zeros", "--levels", "2", "--horizon", "4", "--format", "csv")
    assert code == 0 and out.splitlines()[0] == "1,1,0,1,0"
    code, out, _ = call(capsys, "xinf", "--builder", "zeros", "--rows", "2", "--horizon", "4", "--format", "csv")
    assert out.splitlines()[0] == "1,0,1,0"


def test_encode_decode(capsys):
    code, out, _ = call(capsys, "encode", "--enum", "eq(k, i)")
    assert code == 0
    n = out.strip()
    assert call(capsys, "decode", n)[1] == "enum: eq(k, i)\n"
    assert call(capsys, "decode", "0")[0] == 2


@pytest.mark.parametrize("suite", ["flip", "reduction", "transversal", "z", "tower", "limit", "all"])
def test_verify_suites_pass(capsys, suite):
    code, out, _ = call(capsys, "verify", suite, "--builder", "binary_naturals", "--rows", "16",
                        "--horizon", "32", "--levels", "4")
    assert code == 0, out
    assert "FAIL" not in out


def test_scan(capsys):
    code, out, _ = call(capsys, "scan", "--builder", "counterexample", "--construction", "perm",
                        "--perm", "t(0,1)", "--rows", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["0,proven_equal,,256", "1,proven_equal,,256", "2,disagreement,1,256"]


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["pair", "1"],
    ["diag", "classical"],
    ["diag", "perm", "--builder", "zeros"],
    ["prefix", "--seq", "k"],
    ["prefix", "--seq", "(i"],
    ["matrix", "--builder", "zeros", "--rows", "0"],
    ["matrix", "--builder", "doubly_periodic"],
    ["diag", "perm", "--builder", "zeros", "--perm", "t(2,2)"],
    ["prefix", "--file", "/nonexistent/file.sdl"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = call(capsys, *argv)
    assert code == 2
    assert err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cantorkit", "pair", "1", "2"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "8\n"
