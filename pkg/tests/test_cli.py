import subprocess
import sys

import pytest

from eideals.cli import cli
from eideals.serialize import loads_report

NO_PRIME = "x*y, E(x)+1, E(y)+1"


def run(*argv):
    return cli(list(argv))


def test_member_not_found(capsys):
    assert run("member", "--ideal", "x*y", "--target", "x*(E(y)-1)", "--depth", "3") == 1
    assert "not found up to depth 3" in capsys.readouterr().out


def test_member_proved_writes_certificate(tmp_path, capsys):
    out = tmp_path / "cert.txt"
    assert run("member", "--ideal", "y", "--target", "x*(E(y)-1)", "--depth", "1", "--out", str(out)) == 0
    assert out.read_text().startswith("eideals-certificate 1\n")
    assert run("certify", "--file", str(out), "--ideal", "y", "--target", "x*(E(y)-1)") == 0


def test_certify_bundled_and_corrupted(tmp_path, capsys):
    cert = tmp_path / "cert.txt"
    assert run("erad", "--ideal", NO_PRIME, "--target", "2", "--level", "1", "--out", str(cert)) == 0
    assert "Erad = (1)" in capsys.readouterr().out
    assert run("certify", "--file", str(cert), "--ideal", NO_PRIME, "--target", "2") == 0
    doc = cert.read_text()
    i = doc.index('"multiplier"')
    j = doc.index('"', doc.index("[", i) + 1) + 1  # first character of the first multiplier
    for new in "37x":
        if doc[j] == new:
            continue
        bad = tmp_path / f"bad{new}.txt"
        bad.write_text(doc[:j] + new + doc[j + 1:])
        assert run("certify", "--file", str(bad), "--ideal", NO_PRIME, "--target", "2") == 3


def test_certify_wrong_target(tmp_path):
    cert = tmp_path / "c.txt"
    run("member", "--ideal", "x", "--target", "x*(E(y)-1)", "--depth", "0", "--out", str(cert))
    assert run("certify", "--file", str(cert), "--ideal", "x", "--target", "x*(E(y)+1)") == 3


def test_refute(capsys):
    assert run("erad", "--ideal", "x*y", "--refute", "--format", "structured") == 3
    rep = loads_report(capsys.readouterr().out)
    assert (rep["a"], rep["b1"], rep["b2"]) == ("x*E(y) - x", "x", "y")
    assert rep["nonmembership"]["depth"] == 3
    assert run("erad", "--ideal", "x", "--refute") == 1


def test_parse(capsys):
    assert run("parse", "x*(E(y) - 1)", "E(x/2) - 1") == 0
    assert capsys.readouterr().out == "x*E(y) - x\nE(1/2*x) - 1\n"


@pytest.mark.parametrize("argv", [
    ("parse", "E(x"),
    ("member", "--ideal", "x", "--target", "q"),
    ("member", "--ideal", "x"),
    ("bogus",),
    ("experiment", "zariski-chain", "--k", "99"),
    ("member", "--ideal", "x", "--target", "x", "--policy", "sometimes"),
])
def test_usage_errors(argv, capsys):
    assert run(*argv) == 2
    assert capsys.readouterr().err


def test_experiment_out(tmp_path, capsys):
    out = tmp_path / "r.txt"
    assert run("experiment", "no-prime-above", "--format", "structured", "--out", str(out)) == 0
    assert loads_report(out.read_text())["experiment"] == "no-prime-above"


def test_selftest_subset(capsys):
    assert run("selftest", "--only", "corruption", "--scale", "0.2") == 0
    assert "PASS corrupted certificates" in capsys.readouterr().out


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "eideals", "parse", "E(x+y)"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "E(x + y)\n"
