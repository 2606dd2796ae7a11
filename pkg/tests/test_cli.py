import csv
import io
import json
import subprocess
import sys

import pytest

from canonstrip.cli import main
from canonstrip.constructions import PolarisedInvariant
from canonstrip.exactpoly import ExactPolynomial


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verlinde(capsys):
    code, out, _ = run(capsys, "verlinde", "--genus", "2", "--max-level", "3")
    assert code == 0 and out.split() == ["1", "6", "19", "44"]
    code, out, _ = run(capsys, "verlinde", "--genus", "4", "--max-level", "5", "--method", "trig")
    assert code == 0
    assert out == run(capsys, "verlinde", "--genus", "4", "--max-level", "5")[1]


def test_hilbert_round_trip(capsys):
    code, out, _ = run(capsys, "hilbert", "--genus", "2", "--construction", "CY1")
    doc = json.loads(out)
    assert code == 0 and doc["construction"] == "CY1"
    inv = PolarisedInvariant.from_json(doc)
    assert inv.hilbert == ExactPolynomial([2, 0, 4]) and inv.index_r == 0


def test_roots(capsys, tmp_path):
    code, out, _ = run(capsys, "roots", "--genus", "3", "--construction", "Moduli")
    doc = json.loads(out)
    assert code == 0 and doc["multiplicity_at_minus_one"] == 2
    assert doc["max_real_part"].startswith("-0.70664053")
    f = tmp_path / "p.json"
    f.write_text(json.dumps(ExactPolynomial([2, 2, 1]).to_json()))
    code, out, _ = run(capsys, "roots", "--polynomial", str(f))
    assert code == 0 and json.loads(out)["max_real_exact"] == "-1"


def test_roots_needs_a_source(capsys):
    code, _, err = run(capsys, "roots", "--genus", "3")
    assert code == 1 and "required" in err


def test_check(capsys):
    code, out, _ = run(capsys, "check", "--genus", "8", "--construction", "Moduli")
    doc = json.loads(out)
    assert code == 0
    assert doc["narrow_strip"] is False and doc["strip"] is True
    assert doc["strip_bounds"]["narrow_strip"] == ["-21/11", "-1/11"]


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--genus-min", "2", "--genus-max", "3", "--jobs", "1")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["g", "Fano1", "Fano2", "Moduli", "CY1", "CY2", "CY3", "CY4", "CY5", "CY6"]
    assert rows[1][0] == "2" and float(rows[1][3]) == -1
    assert rows[2][3] == "-0.70664053948934590173"
    assert len(rows[2][3].lstrip("-0.")) == 20
    assert rows[-1] == ["dim", "3g-4", "3g-3", "3g-3", "3g-4", "3g-5", "3g-3", "3g-3", "3g-3", "3g-3"]
    code, out, _ = run(capsys, "table", "--genus-min", "2", "--genus-max", "2", "--format", "json", "--jobs", "1")
    doc = json.loads(out)
    cell = doc["rows"][0]["values"]["Fano1"]
    assert cell["exact"] == "-1/2" and cell["certified_error"] == 0


def test_plot_data(capsys):
    code, out, _ = run(capsys, "plot-data", "--genus-min", "2", "--genus-max", "2", "--jobs", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 3
    deflated = [r for r in rows if r["deflated"] == "1"]
    assert len(deflated) == 1 and float(deflated[0]["real"]) == -1
    others = [r for r in rows if r["deflated"] == "0"]
    assert sorted(round(float(r["imag"]), 10) for r in others) == [-0.7071067812, 0.7071067812]


def test_plot_data_counts(capsys):
    code, out, _ = run(capsys, "plot-data", "--genus-min", "2", "--genus-max", "6", "--format", "json", "--jobs", "1")
    recs = json.loads(out)
    for g in range(2, 7):
        assert sum(r["multiplicity"] for r in recs if r["genus"] == g) == 3 * g - 3


def test_thresholds_short_range(capsys):
    # only up to genus 9: the CS and CL claims cannot be confirmed yet
    code, out, _ = run(capsys, "thresholds", "--genus-max", "9", "--jobs", "1")
    lines = out.splitlines()
    assert lines[0].startswith("PASS") and "NCS(Moduli)" in lines[0]
    assert lines[1].startswith("FAIL") and lines[2].startswith("FAIL")
    assert code == 3


def test_ehrhart(capsys, tmp_path):
    f = tmp_path / "square.txt"
    f.write_text("1 1\n-1 1\n1 -1\n-1 -1\n")
    code, out, _ = run(capsys, "ehrhart", "--polytope", str(f))
    doc = json.loads(out)
    assert code == 0 and doc["polytopes"][0]["strip"] is True
    code, out, _ = run(capsys, "ehrhart", "--bundled", "2")
    doc = json.loads(out)
    assert doc["maximum"]["name"] == "d2_00"
    assert doc["maximum"]["max_real_part"].startswith("-0.333333333333")
    code, out, _ = run(capsys, "ehrhart", "--scan", str(tmp_path))
    assert code == 0 and len(json.loads(out)["polytopes"]) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--genus-min", "5", "--genus-max", "3"],
        ["table", "--genus-min", "1", "--genus-max", "3"],
        ["bogus"],
        ["hilbert", "--genus", "2", "--construction", "CY9"],
        ["verlinde", "--genus", "2"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        code = main(argv)
        raise SystemExit(code)
    assert exc.value.code == 1


def test_computation_error(capsys):
    code, _, err = run(capsys, "hilbert", "--genus", "1", "--construction", "Moduli")
    assert code == 2 and "InvalidGenus" in err


def test_ehrhart_bad_polytope(capsys, tmp_path):
    f = tmp_path / "flat.txt"
    f.write_text("0 0\n1 1\n2 2\n")
    code, _, err = run(capsys, "ehrhart", "--polytope", str(f))
    assert code == 2 and "NotFullDimensional" in err


def test_deterministic_across_jobs():
    def table(jobs):
        cmd = [sys.executable, "-m", "canonstrip", "table", "--genus-min", "2", "--genus-max", "6", "--jobs", str(jobs)]
        return subprocess.run(cmd, check=True, capture_output=True).stdout

    assert table(1) == table(2)
