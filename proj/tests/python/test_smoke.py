import json
from fractions import Fraction
from pathlib import Path

import pytest

import kernelsmith as ks

DATA = Path(__file__).resolve().parents[2] / "data"


def figure_instance():
    return json.loads((DATA / "fig2_mpsc.json").read_text())


def test_reduce_keeps_class():
    w = [2**200 + 7, -(2**199), 3]
    out, report = ks.reduce(w, 4)
    assert len(out) == 3
    assert ks.same_class(w, out, 4)
    assert report["d"] == "3"
    assert report["verified"] in ("sign-order", "exhaustive")


def test_reduce_with_threshold_preserves_comparison():
    w = [Fraction(10**40, 3), 10**40, 1]
    k = 10**40
    out, k2, _ = ks.reduce_with_threshold(w, k, 3)
    for b in ([1, 0, 0], [0, 1, 0], [0, 1, 1], [1, -1, 0]):
        lhs = sum(x * y for x, y in zip(b, w)) <= k
        rhs = sum(x * y for x, y in zip(b, out)) <= k2
        assert lhs == rhs


def test_reduce_rational():
    w = ["1/3", "2/7", "-5/11"]
    out, report = ks.reduce_rational(w, 2)
    assert ks.same_class(w, out, 2, "Q")
    assert report["r"] == "2"


def test_figure_optimum():
    rep = ks.brute_force(figure_instance())
    assert rep["value"] == 9
    assert rep["optima"] == [[0, 3, 4]]


def test_kernelize_and_verify():
    doc = figure_instance()
    for edge in doc["data"]["graph"]["edges"]:
        edge[2] = str(int(edge[2]) * 10**60 + 1)
    reduced, report = ks.kernelize(doc)
    assert report["problem"] == "mpsc"
    assert int(report["bits_out"]) < int(report["bits_in"])
    assert ks.verify(doc, reduced)["passed"]


def test_verify_reports_witness():
    doc = figure_instance()
    bad = json.loads(json.dumps(doc))
    bad["data"]["graph"]["edges"][4][2] = "20"
    rep = ks.verify(doc, bad)
    assert not rep["passed"]
    assert rep["witness"] is not None


def test_threshold_travels():
    doc = figure_instance()
    reduced, _ = ks.kernelize(doc, threshold=9)
    assert "threshold" in reduced
    doc["threshold"] = "9"
    assert ks.verify(doc, reduced)["passed"]


def test_input_errors_raise():
    with pytest.raises(ks.InputError):
        ks.kernelize({"problem": "nope", "data": {}})
    with pytest.raises(ValueError):
        ks.reduce([], 2)


def test_cli_in_process():
    code, out, _ = ks.run_cli("generate", "--problem", "wis", "--n", "4", "--seed", "3")
    assert code == 0
    assert json.loads(out)["problem"] == "wis"
    code, _, err = ks.run_cli("kernelize", "--in", "/no/such/file.json")
    assert code == 2
    assert err
