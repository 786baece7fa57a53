import csv
import io
import json
import math
import subprocess
import sys
from pathlib import Path

import pytest

from oracles import complete_homogeneous_traces, genus2_N0, genus2_N1, verlinde_rank2
from verlinde_traces.cli import main

ROOT = Path(__file__).resolve().parents[1]
SPECS = ROOT / "specs"
FIXTURES = Path(__file__).resolve().parent / "fixtures"
G2 = str(SPECS / "hyperelliptic-g2.spec")
C3 = str(SPECS / "cyclic3-g2.spec")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_golden_genus2_csv_is_reproduced():
    code, text = run("trace", G2, "--levels", "0..10", "--format", "csv")
    assert code == 0
    golden = (FIXTURES / "hyperelliptic-g2-levels-0-10.csv").read_text()
    assert text == golden


def test_golden_genus2_csv_matches_closed_forms():
    rows = list(csv.DictReader(io.StringIO((FIXTURES / "hyperelliptic-g2-levels-0-10.csv").read_text())))
    assert list(rows[0]) == ["level", "m", "n", "N0", "N1", "trace"]
    for row in rows:
        level = int(row["level"])
        assert int(row["N0"]) == genus2_N0(level)
        assert int(row["N1"]) == genus2_N1(level)
        assert int(row["trace"]) == math.comb(level + 3, 3)


def test_golden_order3_csv():
    code, text = run("trace", C3, "--levels", "0..6", "--format", "csv")
    assert code == 0
    golden = (FIXTURES / "cyclic3-g2-levels-0-6.csv").read_text()
    assert text == golden
    # level 1 carries eigenspaces of dimension (2, 1, 1); level k is S^k of it
    expected = complete_homogeneous_traces(3, (2, 1, 1), 6)
    for row in csv.DictReader(io.StringIO(golden)):
        assert expected[int(row["level"])] == int(row["trace"])


def test_output_is_deterministic():
    assert run("trace", C3, "--levels", "0..4") == run("trace", C3, "--levels", "0..4")


def test_table_format():
    code, text = run("trace", G2, "--levels", "1..2")
    lines = text.splitlines()
    assert lines[0].split() == ["level", "m", "n", "N0", "N1", "trace", "hypothesis"]
    assert lines[1].split() == ["1", "1", "1", "7", "3", "4", "ok"]


def test_json_lines_encode_cyclotomic_values():
    code, text = run("trace", str(SPECS / "cyclic5-g2.spec"), "--levels", "1..2", "--format", "json-lines")
    first, second = (json.loads(line) for line in text.splitlines())
    # 1 + nu + nu^2 + nu^4 = -nu^3
    assert first["trace"] == {"p": 5, "coeffs": ["0", "0", "0", "-1"]}
    assert second["trace"] == 0 and second["hypothesis_ok"] is True


def test_thaddeus_mode_flags_hypothesis():
    code, text = run("trace", G2, "--mode", "thaddeus", "--m", "0", "--n", "5")
    assert code == 0
    assert text.splitlines()[1].split()[-1] == "OUTSIDE"
    code, text = run("trace", G2, "--mode", "thaddeus", "--m", "2", "--n", "2", "--format", "csv")
    assert text.splitlines()[1] == ",2,2,22,12,10"


def test_dimension_subcommand():
    code, text = run("dimension", G2, "--levels", "0..0")
    assert code == 0
    assert text.splitlines()[1].split() == ["0", "0", "0", "1", "1", "1", "0"]
    code, text = run("dimension", str(SPECS / "hyperelliptic-g3.spec"), "--levels", "0..3")
    dims = [int(line.split()[3]) for line in text.splitlines()[1:]]
    assert dims == [verlinde_rank2(3, k) for k in range(4)]


@pytest.mark.parametrize("name", ["hyperelliptic-g2.spec", "hyperelliptic-g3.spec", "cyclic3-g2.spec", "cyclic5-g2.spec"])
def test_crosscheck_passes(name):
    code, text = run("crosscheck", str(SPECS / name), "--levels", "0..3")
    assert code == 0
    assert "MISMATCH" not in text
    assert text.rstrip().endswith("component evaluations agree")


def test_crosscheck_reports_corrupted_table():
    code, text = run("crosscheck", str(FIXTURES / "corrupted-p3.spec"), "--levels", "1..1")
    assert code == 1
    assert text.startswith("MISMATCH: degree table of component i=1 k=0")
    assert "sum of W- eigenranks is 2, expected i = 1" in text
    assert "path A (residue)" in text and "chh_sym_U" in text


def test_contribution_subcommand():
    code, text = run("contribution", G2, "--levels", "2", "--i", "1")
    assert code == 0
    assert text.strip() == "i=1 k=0 mult=6 divisor=(1, 0, 0, 0, 0, 0) residue=2 ring=2 ok"
    code, text = run("contribution", G2, "--levels", "2", "--i", "1", "--dump")
    assert "todd" in text
    code, _ = run("contribution", G2, "--levels", "2", "--i", "1", "--k", "3")
    assert code == 2


def test_input_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.spec"
    bad.write_text("[curve]\np = 2\ng_X = 2\ng_Y = 0\nd = 4\nsize = 3\n")
    code, _ = run("trace", str(bad), "--levels", "0..1")
    assert code == 2
    assert f"{bad}:6: unknown key 'size'" in capsys.readouterr().err
    assert run("trace", G2, "--levels", "3..1")[0] == 2
    assert run("trace", G2)[0] == 2
    assert run("trace", G2, "--mode", "thaddeus", "--m", "1")[0] == 2
    assert run("bogus")[0] == 2
    assert run("trace", str(SPECS / "missing.spec"), "--levels", "1")[0] == 2


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "verlinde_traces", "trace", G2, "--levels", "1..1", "--format", "csv"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[1] == "1,1,1,7,3,4"
