from __future__ import annotations

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from skewcy.cli import run

QPLANE = """\
[field]
rationals
[generators]
x = (1)
y = (1)
[relations]
y*x - 3*x*y
[automorphism d]
x = 2*x
y = 5*y
"""


def call(argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(argv, out, err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def qfile(tmp_path):
    p = tmp_path / "quantum_plane.alg"
    p.write_text(QPLANE)
    return str(p)


def test_nakayama_report(qfile):
    status, out, _ = call(["nakayama", qfile])
    assert status == 0
    assert "x: 1/3*x" in out and "y: 3*y" in out
    assert "numerically certified to degree 8" in out
    status, out, _ = call(["nakayama", qfile, "--json"])
    doc = json.loads(out)
    assert list(doc) == ["command", "inputs", "certificate", "result", "verdict", "provenance", "seed"]
    assert doc["result"]["nakayama"]["matrix"] == [["1/3", "0"], ["0", "3"]]
    assert doc["result"]["as_index_total"] == 2


def test_json_is_byte_identical(qfile):
    a = call(["verify", "hi1", "catalog:downup_010", "--group", "G", "--json"])[1]
    b = call(["verify", "hi1", "catalog:downup_010", "--group", "G", "--json"])[1]
    assert a == b
    assert json.loads(a)["seed"] == 1729


def test_exit_codes(qfile):
    assert call(["verify", "hi3", "catalog:skewpoly(3)"])[0] == 0
    assert call(["certify", "catalog:downup_010"])[0] == 2  # not quadratic
    status, _, err = call(["hdet", qfile, "--auto", "nope"])
    assert status == 2 and "nope" in err
    assert call(["nakayama", "/nonexistent.alg"])[0] == 2
    with pytest.raises(SystemExit) as exc:
        call(["frobnicate"])
    assert exc.value.code == 2


def test_unequal_verdict_exits_one(tmp_path):
    p = tmp_path / "k.alg"
    p.write_text(
        "[generators]\nx\ny\n[relations]\ny*x + x*y\n"
        "[automorphism swap]\nx = y\ny = x\n[automorphism m]\nx = x\ny = -y\n"
        "[group G]\nm\n"
        "[known]\nnakayama = m\nas_index = 2\n"
    )
    status, out, _ = call(["verify", "center", str(p), "--auto", "swap", "--degree", "4"])
    assert status == 0  # the Koszul route gives mu = -id, which is central
    status, out, _ = call(["nakayama", str(p), "--source", "registry"])
    assert status == 0 and "y: -y" in out and "registry" in out
    status, out, _ = call(["hdet", str(p), "--auto", "m", "--source", "registry"])
    assert status == 2  # no rule registered for hdet
    # mu_A = -id is not in G = <m>, and hdet(m) = -1: no inner witness
    status, out, _ = call(["verify", "hi1", str(p), "--group", "G", "--degree", "4", "--json"])
    doc = json.loads(out)
    assert status == 1 and doc["verdict"]["equal"] is False


def test_commands_run(qfile, tmp_path):
    out_file = str(tmp_path / "twist.alg")
    cases = [
        ["validate", qfile],
        ["gb", qfile, "--deg", "4"],
        ["hilbert", qfile, "--deg", "5"],
        ["dual", qfile],
        ["certify", qfile],
        ["hdet", qfile, "--auto", "d"],
        ["twist", qfile, "--auto", "d", "--out", out_file],
        ["ore", qfile, "--auto", "d"],
        ["tensor", qfile, "catalog:polynomial(1)"],
        ["normal", qfile, "--elem", "x"],
        ["quotient", qfile, "--elem", "x"],
        ["smash", "catalog:downup_010", "--group", "G", "--samples", "20"],
        ["verify", "hi2", qfile, "--auto", "d"],
        ["verify", "ore-hdet", qfile, "--auto", "d"],
        ["verify", "center", qfile],
        ["verify", "tensor", qfile, "--with", "catalog:polynomial(1)"],
        ["verify", "quotient", qfile, "--elem", "x"],
        ["verify", "descent", qfile, "--elem", "x", "--auto", "d"],
        ["catalog", "list"],
        ["catalog", "show", "skewpoly(2)"],
        ["catalog", "selftest"],
    ]
    for argv in cases:
        status, out, err = call(argv)
        assert status == 0, (argv, err)
        assert out.strip()
    assert call(["hilbert", out_file])[0] == 0


def test_hilbert_and_gb_values(qfile):
    doc = json.loads(call(["hilbert", "catalog:downup_010", "--deg", "6", "--json"])[1])
    assert doc["result"]["hilbert"] == [1, 2, 4, 6, 9, 12, 16]
    doc = json.loads(call(["gb", qfile, "--json"])[1])
    assert doc["result"]["groebner"] == ["y*x - 3*x*y"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "skewcy", "catalog", "list"], capture_output=True, text=True)
    assert proc.returncode == 0 and "downup_010" in proc.stdout


SAMPLES = sorted((Path(__file__).resolve().parent.parent / "presentations").glob("*.alg"))


@pytest.mark.parametrize("path", SAMPLES, ids=lambda p: p.name)
def test_sample_presentations(path):
    assert call(["validate", str(path)])[0] == 0
    assert call(["verify", "hi3", str(path)])[0] == 0


def test_sample_values():
    root = Path(__file__).resolve().parent.parent / "presentations"
    doc = json.loads(call(["nakayama", str(root / "skewpoly3_f101.alg"), "--json"])[1])
    assert doc["result"]["nakayama"]["matrix"] == [["26", "0", "0"], ["0", "28", "0"], ["0", "0", "77"]]
    status, out, _ = call(["verify", "hi2", str(root / "bigraded_plane.alg"), "--auto", "p,id2", "--json"])
    assert status == 0 and json.loads(out)["verdict"]["lhs"] == [["1/7", "0"], ["0", "7"]]
