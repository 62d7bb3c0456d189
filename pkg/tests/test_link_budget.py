import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ris_scope.link_budget as lb
from oracles import snr_hand_db
from ris_scope.core import DB_FLOOR, ConfigurationError, RisGeometry
from ris_scope.link_budget import (
    LinkBudget,
    Scene,
    default_scene,
    detection_scan,
    direct_snr_db,
    horn_gain,
    snr_db,
)

WAVELENGTH = 0.054505
BASE = LinkBudget(p_tx=0.0, g_a=12.0, sigma_f=8.5, sigma_b=8.5, sigma_t=1.0,
                  wavelength=WAVELENGTH, r1=3.0, r2=3.0, n0=-105.0)


def test_snr_worked_example():
    assert snr_db(BASE) == pytest.approx(28.6, abs=0.1)
    assert snr_db(BASE) == pytest.approx(snr_hand_db(0.0, 12.0, 8.5, 8.5, 1.0, WAVELENGTH,
                                                     3.0, 3.0, -105.0), abs=1e-9)


@pytest.mark.parametrize("name, delta, expected", [
    ("p_tx", 1.0, 1.0), ("sigma_f", 1.0, 1.0), ("sigma_b", 1.0, 1.0), ("sigma_t", 1.0, 1.0),
    ("g_a", 1.0, 2.0), ("n0", 1.0, -1.0), ("sigma_t", 3.0, 3.0),
])
def test_snr_is_affine_in_db_inputs(name, delta, expected):
    moved = replace(BASE, **{name: getattr(BASE, name) + delta})
    assert snr_db(moved) - snr_db(BASE) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize("name", ["r1", "r2"])
def test_doubling_a_range_costs_twelve_db(name):
    moved = replace(BASE, **{name: 2 * getattr(BASE, name)})
    assert snr_db(moved) - snr_db(BASE) == pytest.approx(-40 * math.log10(2), abs=1e-9)
    assert snr_db(moved) - snr_db(BASE) == pytest.approx(-12.04, abs=0.005)


@given(st.floats(-50, 50), st.floats(0, 30), st.floats(-40, 40), st.floats(-40, 40),
       st.floats(-40, 40), st.floats(0.01, 1.0), st.floats(0.1, 100), st.floats(0.1, 100),
       st.floats(-150, 0))
def test_snr_matches_hand_evaluation(p_tx, g_a, sf, sb, st_, lam, r1, r2, n0):
    b = LinkBudget(p_tx, g_a, sf, sb, st_, lam, r1, r2, n0)
    assert snr_db(b) == pytest.approx(snr_hand_db(p_tx, g_a, sf, sb, st_, lam, r1, r2, n0),
                                      abs=1e-9)


@pytest.mark.parametrize("kwargs", [{"r1": 0.0}, {"r2": -1.0}, {"wavelength": 0.0}])
def test_link_budget_validation(kwargs):
    with pytest.raises(ConfigurationError):
        replace(BASE, **kwargs)


def test_horn_gain_examples():
    assert float(horn_gain(0.0, 28.9, -25.6, 12.0)) == 12.0
    assert float(horn_gain(14.45, 28.9, -25.6, 12.0)) == pytest.approx(9.0, abs=1e-12)
    assert float(horn_gain(-14.45, 28.9, -25.6, 12.0)) == pytest.approx(9.0, abs=1e-12)
    assert float(horn_gain(90.0, 28.9, -25.6, 12.0)) == pytest.approx(12.0 - 25.6)
    with pytest.raises(ConfigurationError):
        horn_gain(0.0, 0.0, -25.6, 12.0)


@given(st.floats(0, 180), st.floats(0, 180))
def test_horn_gain_is_monotone_off_boresight(a, b):
    ga, gb = horn_gain([a, b], 28.9, -25.6, 12.0)
    if a <= b:
        assert ga >= gb


def test_direct_path_is_the_two_way_equation():
    value = direct_snr_db(10.0, 12.0, 0.0, WAVELENGTH, 2.0, -90.0)
    expected = (10 + 24 + 20 * math.log10(WAVELENGTH) - 30 * math.log10(4 * math.pi)
                - 40 * math.log10(2.0) + 90)
    assert float(value) == pytest.approx(expected, abs=1e-9)


def test_default_scene_layout():
    scene = default_scene()
    assert len(scene.targets) == 50
    assert [scene.labels.count(s) for s in "ABC"] == [15, 17, 18]
    ys = [t[0] for t in scene.targets]
    np.testing.assert_allclose(np.diff(ys), 0.03)
    angles = [math.degrees(math.atan2(y, z)) for y, z in scene.targets]
    assert 14 < min(angles) and max(angles) < 46
    assert scene.schedule == {"A": 45.0, "B": 30.0, "C": 15.0}


def test_scene_dict_round_trip():
    scene = default_scene(p_tx_dbm=60.0)
    assert Scene.from_dict(scene.to_dict()) == scene


def test_scene_label_count_must_match():
    with pytest.raises(ConfigurationError):
        Scene(targets=((0.1, 1.0),), labels=())


@pytest.fixture(scope="module")
def scans():
    scene = default_scene()
    out = {"none": detection_scan(scene, None)}
    for n in (8, 16, 32):
        out[n] = detection_scan(scene, RisGeometry.from_size(n, 10))
    return out


def test_without_ris_few_detections(scans):
    assert scans["none"].total <= 5


def test_detections_monotone_in_aperture(scans):
    assert scans[8].total <= scans[16].total <= scans[32].total
    assert scans[32].total - scans[8].total >= 10


def test_report_rows_and_counts_agree(scans):
    report = scans[16]
    assert sum(report.counts.values()) == report.total
    assert sum(r["detected"] for r in report.rows) == report.total
    for r in report.rows:
        assert r["detected"] == (r["snr_db"] > 1.0)
        assert r["snr_db"] >= max(r["snr_direct_db"], r["snr_ris_db"]) - 1e-9
    d = report.to_dict()
    assert set(d) == {"counts", "total", "targets"}


def test_detection_scan_is_deterministic(scans):
    again = detection_scan(default_scene(), RisGeometry.from_size(16, 10))
    assert again.to_dict() == scans[16].to_dict()


@settings(max_examples=5, deadline=None)
@given(st.randoms(use_true_random=False))
def test_detection_scan_is_permutation_invariant(rnd):
    geom = RisGeometry.from_size(16, 10)
    scene = default_scene()
    order = list(range(len(scene.targets)))
    rnd.shuffle(order)
    shuffled = replace(scene, targets=tuple(scene.targets[i] for i in order),
                       labels=tuple(scene.labels[i] for i in order))
    a = detection_scan(scene, geom)
    b = detection_scan(shuffled, geom)
    assert a.counts == b.counts
    snr_a = {(r["y"], r["z"]): r["snr_db"] for r in a.rows}
    snr_b = {(r["y"], r["z"]): r["snr_db"] for r in b.rows}
    assert snr_a == snr_b


def test_floor_cross_section_detects_nothing(monkeypatch):
    def floor(geom, profile, theta_i, theta_s, model="paper"):
        return np.full(np.broadcast(np.atleast_1d(theta_i), np.atleast_1d(theta_s)).shape, DB_FLOOR)

    monkeypatch.setattr(lb, "bistatic_rcs", floor)
    report = detection_scan(default_scene(), RisGeometry.from_size(32, 10))
    assert report.total == 0


def test_missing_schedule_entry_is_reported():
    scene = default_scene(schedule={"A": 45.0, "B": 30.0})
    with pytest.raises(ConfigurationError, match="C"):
        detection_scan(scene, RisGeometry.from_size(16, 10))
