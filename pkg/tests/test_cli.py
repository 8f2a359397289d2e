import csv
import io
import json
import subprocess
import sys

import pytest

from planaralg.algebra import AlgebraElement, jones_e
from planaralg.cli import run
from planaralg.scalars import parse_scalar


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), stdout=buf)
    return code, buf.getvalue()


@pytest.mark.parametrize("family, n, dim", [("tl", 3, 5), ("tl", 6, 132), ("fc", 4, 55), ("FC", 0, 1)])
def test_dim(family, n, dim):
    assert call("dim", "--family", family, "--n", str(n)) == (0, f"{dim}\n")


def test_basis_formats():
    code, out = call("basis", "--n", "2")
    assert code == 0 and len(json.loads(out)) == 2
    code, out = call("basis", "--family", "fc", "--n", "1", "--format", "text")
    assert out == "3 2 1 0\n"


def test_mul_is_deterministic():
    a = call("mul", "--family", "fc", "--n", "3", "--seed", "4")
    assert a == call("mul", "--family", "fc", "--n", "3", "--seed", "4")
    assert a[0] == 0
    assert a != call("mul", "--family", "fc", "--n", "3", "--seed", "5")


def test_element_files_pipe_through(tmp_path):
    e = tmp_path / "e.json"
    e.write_text(json.dumps(jones_e(1, 2).to_json()))
    prod = tmp_path / "ee.json"
    assert call("mul", str(e), str(e), "--out", str(prod)) == (0, "")
    assert AlgebraElement.from_json(json.loads(prod.read_text())) == jones_e(1, 2)
    code, out = call("trace", str(prod), "--delta", "4")
    lines = out.splitlines()
    assert code == 0 and parse_scalar(lines[0]) == parse_scalar("a^-2*b^-2")
    assert lines[1] == "0.06250000"
    code, out = call("tangle-eval", "--kind", "inclusion", "--n", "2", str(e))
    res = AlgebraElement.from_json(json.loads(out)["result"])
    assert res == jones_e(1, 3)


def test_trace_json():
    code, out = call("trace", "--n", "2", "--a", "2", "--b", "3", "--format", "json", "--seed", "1")
    rec = json.loads(out)
    x = AlgebraElement.from_json(rec["element"])
    assert code == 0 and rec["value"] == pytest.approx(parse_scalar(rec["trace"]).evaluate(2, 3))
    assert x.n == 2


def test_relations_exit_codes():
    code, out = call("relations", "--n", "4", "--family", "fc")
    assert code == 0 and "all relations hold" in out
    code, out = call("relations", "--n", "3", "--format", "json")
    assert json.loads(out)["passed"] is True


def test_gram_csv():
    code, out = call("gram", "--n", "2", "--delta", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows == [["1.00000000", "0.25000000"], ["0.25000000", "1.00000000"]]
    code, out = call("gram", "--n", "2")
    assert json.loads(out) == [["1*a^0*b^0", "1*a^-1*b^-1"], ["1*a^-1*b^-1", "1*a^0*b^0"]]


def test_scan_and_quantize():
    code, out = call("scan", "--n", "2", "--delta", "1", "3", "--format", "text")
    lines = out.splitlines()
    assert code == 0 and lines[0].endswith("rank=1") and lines[1].endswith("rank=2")
    code, out = call("quantize", "--n", "3", "--grid", "0.5", "2", "1000")
    assert out.splitlines() == ["1.00000000", "1.41421356"]


def test_bratteli_formats():
    code, out = call("bratteli", "--n", "2", "--family", "fc")
    assert out.splitlines() == ["level 0: ∅:1", "level 1: ab:1", "level 2: ∅:1, aa:1, abba:1"]
    code, out = call("bratteli", "--n", "3", "--format", "dot")
    assert code == 0 and out.startswith("graph bratteli_tl {")
    code, out = call("bratteli", "--n", "2", "--format", "json")
    assert len(json.loads(out)["levels"]) == 3


def test_tangle_file(tmp_path):
    from planaralg.tangles import elementary

    t = tmp_path / "t.json"
    t.write_text(json.dumps(elementary("multiplication", 2).to_json()))
    a = call("tangle-eval", "--tangle", str(t), "--family", "fc", "--seed", "3")
    assert a == call("tangle-eval", "--tangle", str(t), "--family", "fc", "--seed", "3")
    rec = json.loads(a[1])
    x, y = (AlgebraElement.from_json(v) for v in rec["inputs"])
    assert AlgebraElement.from_json(rec["result"]) == x * y


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["dim"],
    ["dim", "--n", "-1"],
    ["gram", "--n", "2", "--format", "csv"],
    ["trace", "--n", "2", "--a", "2"],
    ["quantize", "--n", "2"],
    ["quantize", "--n", "2", "--grid", "1", "3", "10"],
    ["tangle-eval", "--n", "2"],
    ["scan", "--n", "2", "--delta", "1", "--tol", "0"],
    ["mul", "--n", "2", "only_one.json"],
])
def test_usage_errors(argv, capsys):
    assert call(*argv)[0] == 2
    assert capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["scan", "--n", "2", "--delta", "-1"],
    ["gram", "--n", "7", "--family", "fc"],
    ["trace", "missing_file.json"],
    ["tangle-eval", "--kind", "jones_projection", "--n", "1"],
])
def test_domain_errors(argv, capsys):
    assert call(*argv)[0] == 1
    assert capsys.readouterr().err


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "planaralg", "dim", "--n", "5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "42\n"
