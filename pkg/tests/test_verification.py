import csv
import dataclasses
import io
import json

import pytest

from curvekit import verification as V
from curvekit.construction import Constants, TwistSchedule, generate
from curvekit.projections import annulus, subsurface_coefficient
from curvekit.report import Report, merge


@pytest.fixture(scope="module")
def prop31(bundle10):
    return V.verify_prop31(bundle10)


def test_prop31_is_clean(prop31):
    assert prop31.violations == []
    assert {"overlap", "filling", "annular", "growth"} <= set(prop31.tables)
    k = prop31.meta["empirical_K"]
    assert k["max_ratio"] <= 4 and k["max_inverse_ratio"] <= 4


def test_prop31_growth_lower_bounds_do_not_exceed_path_length(prop31):
    for row in prop31.tables["growth"]:
        assert 1 <= row["lower"] <= row["upper"]
    # lower bounds grow with the number of witness cores
    lows = [r["lower"] for r in prop31.tables["growth"]]
    assert lows[-1] >= 3


def test_prop31_flags_a_damaged_sequence(bundle10):
    curves = list(bundle10.curves)
    curves[6] = curves[3]
    bad = dataclasses.replace(bundle10, curves=curves)
    rep = V.verify_prop31(bad)
    tags = {v["tag"] for v in rep.violations}
    assert "claim:overlap" in tags
    assert "claim:consecutive-disjoint" in tags


def test_small_powers_cannot_certify_growth():
    # with the floor disabled the twists are too small to serve as witnesses
    b = generate(8, TwistSchedule.from_list([1] * 8, 0), Constants(E=0))
    rep = V.verify_prop31(b)
    assert any(v["tag"] == "claim:growth-witness" for v in rep.violations)
    # the annular lower bound is vacuous here and still holds
    assert not any(v["tag"] == "claim:annular-lower" for v in rep.violations)


def test_divergence_certificate(bundle10):
    rep = V.divergence_certificate(bundle10)
    assert rep.ok
    vals = [r["value"] for r in rep.tables["divergence"]]
    assert vals == sorted(vals) and len(set(vals)) == len(vals)


def test_bounded_combinatorics_small_radius(bundle10):
    rep = V.verify_bounded_combinatorics(bundle10, 6, radius=12, weight_cutoff=12)
    assert rep.ok
    assert [r["depth"] for r in rep.tables["maxima"]] == [6, 8]
    assert all(r["value"] == 1 for r in rep.tables["boundary_identity"])


def test_bounded_rejects_depth_beyond_sequence(bundle10):
    with pytest.raises(ValueError):
        V.verify_bounded_combinatorics(bundle10, 9)


def test_behrstock_small_sample():
    rep = V.verify_behrstock(samples=40, seed=3)
    assert rep.ok
    assert len(rep.tables["samples"]) == 40
    assert rep.meta["max_min"] <= V.BEHRSTOCK_CONSTANT


def test_behrstock_is_deterministic_in_seed():
    a = V.verify_behrstock(samples=10, seed=11)
    b = V.verify_behrstock(samples=10, seed=11)
    assert a.dumps() == b.dumps()


def test_intersection_bound_helper(bundle10):
    g = bundle10.curves
    rec = subsurface_coefficient(annulus(g[4]), g[1], g[7])
    assert V.intersection_bound_holds(rec)
    fake = dataclasses.replace(rec, value=10 ** 12)
    assert not V.intersection_bound_holds(fake)


def test_workers_do_not_change_results(bundle10):
    assert V.verify_prop31(bundle10, workers=3).dumps() == V.verify_prop31(bundle10).dumps()


def test_report_json_and_csv_roundtrip():
    rep = Report("x", meta={"k": 1}, tables={"t": [{"b": 2, "a": [1, 2]}, {"a": [], "c": "z"}]})
    rep.violate("claim:demo", i=1)
    doc = json.loads(rep.dumps())
    assert doc["schema"] == 1 and doc["violations"] == [{"tag": "claim:demo", "i": 1}]
    rows = list(csv.DictReader(io.StringIO(rep.table_csv("t"))))
    assert rows == [{"a": "[1, 2]", "b": "2", "c": ""}, {"a": "[]", "b": "", "c": "z"}]
    m = merge("all", {"one": rep}, {})
    assert m.violations[0]["report"] == "one" and "one.t" in m.tables
    assert not m.ok
