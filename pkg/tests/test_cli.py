"""Command line interface, run in-process through main()."""

import json
import os

import pytest

from conftest import FIXDIR
from pgrowth.cli import main


def path(name):
    return os.path.join(FIXDIR, name + ".json")


def test_terms(capsys):
    assert main(["terms", path("square"), "--count", "5"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == "1 4 8 12 16 20"


def test_series_text(capsys):
    assert main(["series", path("square")]) == 0
    out = capsys.readouterr().out
    assert "1 + 2*t + t^2" in out
    assert "C1 = 0" in out


def test_series_json(capsys):
    assert main(["series", path("honeycomb"), "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["series"]["numerator"] == [1, 1, 1]
    assert doc["quasi_polynomial"]["period"] == 1
    assert doc["C2_prime"] in ("0", "1", "2")


def test_series_latex(capsys):
    assert main(["series", path("square"), "--format", "latex"]) == 0
    assert r"\frac" in capsys.readouterr().out


def test_invariants(capsys):
    assert main(["invariants", path("snub-square")]) == 0
    out = capsys.readouterr().out
    assert "C2' = 4" in out
    assert "graph period = 6" in out


def test_c2(capsys):
    assert main(["c2", path("square"), "--radius", "8"]) == 0
    out = capsys.readouterr().out
    assert "max distance-minus-gauge" in out


def test_verify(capsys):
    assert main(["verify", path("honeycomb"), "--samples", "20",
                 "--radius", "25"]) == 0
    out = capsys.readouterr().out
    assert "translation property" in out


def test_error_reporting(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 1, "classes": 1, "undirected": True,
                               "edges": [{"from": 0, "to": 0, "shift": [2]}],
                               "pos": [["0"]]}))
    assert main(["series", str(bad)]) == 1
    err = capsys.readouterr().err
    assert "error:" in err
