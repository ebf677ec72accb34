import math

import pytest

import distgeo


def test_expressions():
    assert distgeo.evaluate("2*t+1", 3.0) == 7.0
    assert distgeo.evaluate("-t^2", 3.0) == pytest.approx(9.0)
    assert distgeo.evaluate("0-t^2", 3.0) == pytest.approx(-9.0)
    assert distgeo.derivative("2*t+1") == "2"
    assert distgeo.evaluate(distgeo.derivative("exp(0.5*t)"), 1.0) == pytest.approx(0.5 * math.exp(0.5))
    with pytest.raises(distgeo.DistgeoError, match="offset 2"):
        distgeo.render("2**t")


def test_catalog():
    assert "sphere3" in distgeo.preset_names()
    assert len(distgeo.family_labels()) == 14
    assert "gauss" in distgeo.check_names()
    assert "presets:" in distgeo.catalog()


def test_golden_ledger():
    rows = distgeo.golden("heisenberg3")
    assert rows and all(r["match"] for r in rows)
    sphere = distgeo.golden("sphere3")
    assert all(r["match"] or r["finding"] for r in sphere)
    warped = distgeo.golden("warped-sphere", "exp(t)")
    assert len(warped) > 50


def test_family():
    d = distgeo.verify_family("thm5.4/2", 2.0, 1.0, 0.0)
    assert d["pass"]
    assert d["ode_max"] < 1e-8
    with pytest.raises(distgeo.DistgeoError):
        distgeo.verify_family("thm5.1/2", -1.0, 0.0, 1.0)


def test_run_scenario():
    scenario = {
        "manifold": "sphere3",
        "distribution": [1, 2],
        "connection": {"kind": "ssm", "U": ["1", "0", "1"]},
        "checks": ["gauss", "codazzi", "ricci"],
    }
    code, report = distgeo.run(scenario)
    assert code == 0
    assert list(report) == ["scenario", "checks", "golden", "summary", "timing_ms"]
    assert report["summary"]["pass"]
    assert report["summary"]["max_residual"] < 1e-9


def test_run_errors():
    with pytest.raises(distgeo.ScenarioError, match="bianchi"):
        distgeo.run({"manifold": "sphere3", "checks": ["bianchi"]})
    code, report = distgeo.run(
        {"manifold": "warped-sphere", "f": "exp(t)", "distribution": [1, 2, 3],
         "connection": {"kind": "lc"}, "c0": 0, "checks": ["einstein"]})
    assert code == 1
    assert not report["summary"]["pass"]
