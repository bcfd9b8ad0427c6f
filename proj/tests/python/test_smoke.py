import math
import os
import pathlib

import pytest

import lagtorus

DATA = pathlib.Path(os.environ.get("LAGTORUS_DATA_DIR", pathlib.Path(__file__).parents[2] / "data"))


def test_origin_circle_is_stationary():
    c, d = lagtorus.defect(lagtorus.origin_circle(1.5))
    assert c == pytest.approx(2.0)
    assert d < 1e-10
    rep = lagtorus.analyze_stationarity(lagtorus.origin_circle(1.5))
    assert rep["verdict"] == "StationaryProduct"
    assert lagtorus.classify(lagtorus.origin_circle(2.0)) == "StationaryProduct"


def test_random_curves_are_not_stationary():
    curve = lagtorus.random_star_curve(7)
    assert lagtorus.winding_number(curve) == 1
    assert lagtorus.total_curvature(curve) == pytest.approx(2 * math.pi)
    assert lagtorus.defect(curve)[1] > 1e-4


def test_points_follow_the_curve():
    curve = lagtorus.offset_circle(2 + 0j, 1.0)
    for z, b in zip(lagtorus.points(curve, [0.0, 1.0]), [0.0, 1.0]):
        assert abs(z - (2 + complex(math.cos(b), math.sin(b)))) < 1e-12


def test_period_and_profile():
    p = lagtorus.period_analysis(2.5)
    assert p["closure_gap"] == pytest.approx(2 * math.pi / 1.5 - 2 * math.pi / 2.5)
    prof = lagtorus.integrate_profile(2.5, 64)
    assert len(prof["samples"]) == 65
    assert prof["numeric_period"] == pytest.approx(2 * math.pi / 1.5, abs=1e-6)


def test_double_points():
    res = lagtorus.find_double_points(lagtorus.offset_circle(0.5, 1.0))
    assert len(res["double_points"]) == 2
    assert lagtorus.find_double_points(lagtorus.origin_circle(1.0))["centrally_symmetric"]


def test_reduction():
    red = lagtorus.reduced_curve(lagtorus.origin_circle(1.0))
    assert red["f"]["k"] == 2
    assert lagtorus.level_set_check(lagtorus.origin_circle(1.0)) < 1e-12
    rep = lagtorus.verify_pullbacks(50, 3)
    assert rep["l_residual"] < 1e-10


def test_errors_map_to_python_exceptions():
    with pytest.raises(lagtorus.DomainError):
        lagtorus.period_analysis(1.5)
    with pytest.raises(lagtorus.ParseError):
        lagtorus.defect("{not json")
    with pytest.raises(lagtorus.Error):
        lagtorus.origin_circle(-1.0)


def test_cli_in_process(tmp_path):
    code, out, _ = lagtorus.run_cli("analyze", DATA / "curves" / "origin_circle.json", tmp_path, 256)
    assert code == 0
    assert "verdict=StationaryProduct" in out
    assert (tmp_path / "report.json").exists()
    code, _, err = lagtorus.run_cli("analyze", DATA / "curves" / "origin_circle.json", "", 100)
    assert code == 1
    assert "samples" in err
