import json
import subprocess
import sys

import pytest

from jtpos.cli import main, parse_complex


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_element(capsys):
    code, out, _ = run(capsys, "element", "x0 x1")
    assert code == 0
    assert "oriented: true" in out and "c: -2" in out and "writhe: 0" in out
    code, out, _ = run(capsys, "element", "x0")
    assert "oriented: false" in out
    code, out, _ = run(capsys, "element", ".")
    assert "c: 0" in out


def test_element_json_stable(capsys):
    _, a, _ = run(capsys, "element", "--word", "x0 x1", "--json")
    _, b, _ = run(capsys, "element", "--word", "x0 x1", "--json")
    assert a == b
    assert json.loads(a)["gamma"]["n"] == 4


def test_parse_error(capsys):
    code, _, err = run(capsys, "element", "x0 y1")
    assert code == 2 and "error" in err


def test_usage_error():
    assert main(["nosuchcommand"]) == 2


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariant", "--jones", "--t", "1", "x0 x1")
    assert code == 0 and out.splitlines()[0] == "0.25"
    _, out, _ = run(capsys, "invariant", "--colourings", "--m", "3", "x0 x1")
    assert "raw: 9" in out and "normalized: 1/9" in out
    _, out, _ = run(capsys, "invariant", "--jones", "--t", "0.37", "--psd", "x0 x1")
    assert "inadmissible for positivity; value printed" in out
    _, out, _ = run(capsys, "invariant", "--bracket", "--A", "exp(3ipi/8)", "--symbolic", "x0 x1")
    assert out.splitlines()[0] == "0.5"
    _, out, _ = run(capsys, "invariant", "--tutte", "--Q", "2", "--K", "ln2", "x0 x1", "--json")
    assert json.loads(out)["value"] == "117/125"
    code, _, err = run(capsys, "invariant", "--jones", "--t", "1", "x0")
    assert code == 2


def test_parse_complex():
    assert parse_complex("0.5,-1") == complex(0.5, -1)
    assert parse_complex("i") == 1j
    assert abs(parse_complex("exp(5ipi/12)") - complex(0.25881904510252074, 0.9659258262890683)) < 1e-12
    assert abs(parse_complex("-exp(-ipi/2)") - 1j) < 1e-12


def test_audit_corpus(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("# F-> words\nx0 x1\nx1 x2\n\nx0 x1 x2^-1 x1^-1\n")
    out_json, out_csv = tmp_path / "r.json", tmp_path / "r.csv"
    code, _, _ = run(capsys, "audit", "--corpus", str(corpus), "--functional", "components",
                     "--json", str(out_json), "--csv", str(out_csv))
    assert code == 0
    assert json.loads(out_json.read_text())["passed"]
    assert out_csv.read_text().count("\n") == 4


def test_audit_failure_exit(tmp_path, capsys):
    corpus = tmp_path / "c.txt"
    corpus.write_text("x0 x1 x2^-1 x1^-1 x1^-1 x0^-1\n.\n")
    code, out, _ = run(capsys, "audit", "--corpus", str(corpus), "--functional", "kauffman2", "--C", "2")
    assert code == 1 and "FAIL" in out


def test_audit_empty(tmp_path, capsys):
    corpus = tmp_path / "empty.txt"
    corpus.write_text("# nothing\n")
    code, out, _ = run(capsys, "audit", "--corpus", str(corpus), "--json")
    assert code == 0 and json.loads(out)["entries"] == []


def test_census_cmd(capsys):
    code, out, _ = run(capsys, "census", "5")
    assert code == 0 and "c = -4: 1 unordered pairs" in out and "c = -2: 7" in out


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "jtpos", "element", "x0 x1"], capture_output=True, text=True)
    assert r.returncode == 0 and "c: -2" in r.stdout
