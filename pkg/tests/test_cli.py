import json
import shutil
import subprocess

import pytest

from holey.catalog import fixture_path
from holey.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "3", "--k", "1")
    assert code == 0 and len(out.split()) == 4
    code, out, _ = run(capsys, "enumerate", "--n", "4", "--k", "1", "--count-only")
    assert out.strip() == "20"


def test_solve_and_render(capsys, tmp_path):
    sol = tmp_path / "sol.json"
    code, _, _ = run(capsys, "solve", "--piece", "0,0;0,2", "--out", str(sol))
    assert code == 0
    data = json.loads(sol.read_text())
    assert (data["rows"], data["cols"]) == (1, 4)
    assert set(data["placements"][0]) == {"transform", "row", "col"}
    code, out, _ = run(capsys, "render", "--solution", str(sol), "--format", "ascii")
    assert out.strip() == "abab"
    svg = tmp_path / "sol.svg"
    assert run(capsys, "render", "--solution", str(sol), "--format", "svg", "--out", str(svg))[0] == 0
    assert svg.read_text().startswith("<svg")


def test_solve_modes(capsys):
    code, out, _ = run(capsys, "solve", "--piece", "0,0;1,1", "--exact", "2x2")
    assert code == 0 and json.loads(out)["rows"] == 2
    code, out, _ = run(capsys, "solve", "--piece", "0,1;1,0;1,2;2,1", "--max-side", "5")
    assert code == 0 and out.startswith("none")
    code, out, _ = run(capsys, "solve", "--piece", "0,0;0,1;1,2;2,2", "--exact", "14x36",
                       "--budget-nodes", "100")
    assert code == 2 and out.startswith("inconclusive")


def test_prove(capsys):
    code, out, _ = run(capsys, "prove", "--piece", "0,1;1,0;1,2;2,1", "--grid", "12")
    cert = json.loads(out)
    assert code == 0 and cert["verdict"] == "unrectifiable"
    code, out, _ = run(capsys, "prove", "--piece", "0,0;1,1;2,2", "--grid", "12", "--no-strips",
                       "--budget-nodes", "1000")
    assert code == 2 and json.loads(out)["verdict"] == "inconclusive"
    code, out, _ = run(capsys, "prove", "--piece", "0,0;1,1;2,2", "--grid", "12")
    assert code == 0 and json.loads(out)["method"] == "strip"


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "--piece", "0,0;0,1;1,2;2,2", "--min-side", "4",
                       "--max-side", "8")
    data = json.loads(out)
    assert code == 0 and data["min_side_gt"] == 4 and data["max_side_gt"] == 8


def test_classify_and_compare(capsys, tmp_path):
    cat = tmp_path / "c.json"
    code, _, _ = run(capsys, "classify", "--n", "2", "--k", "1", "--profile", "desk", "--out", str(cat))
    assert code == 0
    code, out, _ = run(capsys, "compare", "--catalog", str(cat), "--expected", str(fixture_path(2, 1)))
    assert code == 0 and "clean" in out
    code, out, _ = run(capsys, "compare", "--catalog", str(cat), "--expected", str(fixture_path(2, 2)))
    assert code == 1


def test_errors(capsys):
    code, _, err = run(capsys, "solve", "--piece", "0,0;0,0")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "render", "--solution", "/nonexistent.json")
    assert code == 1
    with pytest.raises(SystemExit):
        main(["solve", "--piece", "0,0", "--exact", "banana"])


@pytest.mark.skipif(shutil.which("holey") is None, reason="console script not installed")
def test_console_script(tmp_path):
    res = subprocess.run(["holey", "enumerate", "--n", "2", "--k", "2", "--count-only"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "2"
