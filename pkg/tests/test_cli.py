import csv
import io
import json
import subprocess
import sys

import pytest

from f2squares import cli
from f2squares.f2linalg import BitMatrix, square
from f2squares.f2poly import companion_matrix
from f2squares.qseries import IntegrityError

from reference_values import BETA_HAT


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def _rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_count_examples():
    code, out, _ = run("count", "--ring", "mat", "--family", "squares", "--max-n", "2")
    assert code == 0
    assert [(r["n"], r["element_count"]) for r in _rows(out)] == [("1", "2"), ("2", "10")]
    _, out, _ = run("count", "--ring", "gl", "--family", "all", "--max-n", "3")
    assert [int(r["element_count"]) for r in _rows(out)] == [1, 6, 168]
    _, out, _ = run("count", "--ring", "mat", "--family", "all", "--max-n", "4")
    assert [int(r["element_count"]) for r in _rows(out)] == [2 ** (n * n) for n in range(1, 5)]


def test_count_json_and_backends_agree():
    _, rat, _ = run("count", "--ring", "gl", "--max-n", "12", "--format", "json")
    _, crt, _ = run("count", "--ring", "gl", "--max-n", "12", "--format", "json", "--backend", "crt")
    a = [json.loads(line) for line in rat.splitlines()]
    b = [json.loads(line) for line in crt.splitlines()]
    assert [r["element_count"] for r in a] == [r["element_count"] for r in b]
    assert all(isinstance(r["element_count"], str) for r in a)


def test_csv_parses_back_losslessly():
    _, out, _ = run("count", "--ring", "mat", "--max-n", "30")
    rows = _rows(out)
    assert list(rows[0]) == ["n", "ring", "family", "element_count", "class_count"]
    big = int(rows[-1]["element_count"])
    assert str(big) == rows[-1]["element_count"] and big < 2**900


def test_classes_examples():
    _, out, _ = run("classes", "--ring", "mat", "--max-n", "6")
    assert [int(r["class_count"]) for r in _rows(out)] == [2, 4, 10, 22, 46, 96]
    _, out, _ = run("classes", "--ring", "gl", "--max-n", "6")
    assert [int(r["class_count"]) for r in _rows(out)] == [1, 2, 5, 10, 20, 41]


@pytest.mark.parametrize("ring", ["mat", "gl"])
def test_classes_methods_identical(ring):
    _, direct, _ = run("classes", "--ring", ring, "--max-n", "60")
    _, euler, _ = run("classes", "--ring", ring, "--max-n", "60", "--method", "euler")
    assert direct == euler


def test_oracle_examples():
    assert run("oracle", "--n", "1")[:2] == (0, "2\n")
    code, out, err = run("oracle", "--n", "2")
    assert (code, out) == (0, "10\n") and "elapsed" in err
    assert run("oracle", "--n", "2", "--invertible")[:2] == (0, "3\n")


def test_oracle_guards():
    code, out, err = run("oracle", "--n", "6")
    assert code == 2 and out == "" and "--i-know-this-is-slow" in err
    assert run("oracle", "--n", "7", "--i-know-this-is-slow")[0] == 2
    assert run("oracle", "--n", "0")[0] == 2


def test_sqrt_identity(tmp_path):
    f = tmp_path / "i3.txt"
    f.write_text("100\n010\n001\n")
    code, out, _ = run("sqrt", "--matrix-file", str(f))
    assert code == 0
    b = BitMatrix.parse(out)
    assert square(b) == BitMatrix.identity(3)


def test_sqrt_refusal(tmp_path):
    f = tmp_path / "shift.txt"
    f.write_text(companion_matrix(0b10, 2).to_text())
    code, out, _ = run("sqrt", "--matrix-file", str(f))
    assert code == 1
    assert out.strip() == "not a square: phi=X partition=(2)"


def test_sqrt_random_square(tmp_path):
    import random

    rng = random.Random(8)
    a = square(BitMatrix.random(4, rng))
    f = tmp_path / "a.txt"
    f.write_text(a.to_text())
    code, out, _ = run("sqrt", "--matrix-file", str(f))
    assert code == 0 and square(BitMatrix.parse(out)) == a


def test_sqrt_parse_errors(tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("012\n000\n000\n")
    assert run("sqrt", "--matrix-file", str(f))[0] == 2
    assert run("sqrt", "--matrix-file", str(tmp_path / "missing.txt"))[0] == 2


def test_ratios_examples():
    code, out, _ = run("ratios", "--ring", "gl", "--terms", "2", "--precision-bits", "256")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2 and lines[0].startswith("estimate,") and lines[1].startswith("1,")
    code, out, _ = run("ratios", "--ring", "gl")
    assert out.splitlines()[0].startswith("estimate," + BETA_HAT)


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["count", "--ring", "mat"],
        ["count", "--ring", "field", "--max-n", "3"],
        ["count", "--ring", "mat", "--max-n", "0"],
        ["count", "--ring", "mat", "--max-n", "101"],
        ["count", "--ring", "mat", "--max-n", "x"],
        ["classes", "--ring", "gl", "--max-n", "3", "--method", "magic"],
        ["ratios", "--ring", "gl", "--terms", "1"],
        ["ratios", "--ring", "gl", "--precision-bits", "128"],
    ],
)
def test_usage_errors(argv):
    assert run(*argv)[0] == 2


def test_integrity_failure_exit_code(monkeypatch):
    from f2squares import classcount

    def broken(*args, **kwargs):
        raise IntegrityError("residues disagree")

    monkeypatch.setattr(classcount, "count_elements", broken)
    code, out, err = run("count", "--ring", "mat", "--max-n", "3", "--backend", "crt")
    assert code == 3 and out == "" and "residues disagree" in err


def test_deterministic_output():
    argv = ["count", "--ring", "gl", "--family", "semisimple", "--max-n", "15"]
    assert run(*argv)[1] == run(*argv)[1]
    argv = ["ratios", "--ring", "mat", "--terms", "20", "--precision-bits", "512"]
    assert run(*argv)[1] == run(*argv)[1]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "f2squares", "sqrt", "--matrix-file", "-"],
        input="10\n01\n",
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert square(BitMatrix.parse(proc.stdout)) == BitMatrix.identity(2)
