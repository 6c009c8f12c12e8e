import math
import os
import subprocess
import xml.etree.ElementTree as ET

import pytest

import pointing as pt


def test_vertical_cone_radius():
    floor = pt.Plane.horizontal(pt.Vec3(0, 0, 0), 10, 10)
    ray = pt.Ray(pt.Vec3(0, 0, 1), pt.Vec3(0, 0, -1))
    for deg in (45.0, 67.5, 90.0):
        e = pt.cone_plane_section(ray, pt.deg_to_rad(deg), floor)
        assert e.semi_major == pytest.approx(math.tan(math.radians(deg) / 2), abs=1e-9)


def test_ray_plane_and_frames():
    floor = pt.Plane.horizontal(pt.Vec3(0, 0, 0), 4, 4)
    hit = pt.ray_plane_intersect(pt.Ray(pt.Vec3(0, 1, 1), pt.Vec3(0, -1, -1)), floor)
    assert abs(hit.x) < 1e-12 and abs(hit.y) < 1e-12
    assert pt.ray_plane_intersect(pt.Ray(pt.Vec3(0, 0, 1), pt.Vec3(0, 0, 1)), floor) is None
    u, v = pt.to_surface_frame(pt.Vec3(0.3, -0.2, 0), floor)
    assert (u, v) == pytest.approx((0.3, -0.2))


def test_resolution():
    theta, ids = pt.resolve_discrete(
        [("a", pt.SurfacePoint(0.1, 0)), ("b", pt.SurfacePoint(0.15, 0)), ("c", pt.SurfacePoint(0.5, 0))],
        pt.SurfacePoint(0, 0),
    )
    assert theta == pytest.approx(0.1)
    assert sorted(ids) == ["a", "b"]
    choice, idx = pt.predict_cluttered(pt.SurfacePoint(0, 0), pt.SurfacePoint(0.3, 0), pt.SurfacePoint(0.05, 0))
    assert (choice, idx) == ("nearer", 1)


def test_generate_and_run():
    trials = pt.generate_trials("ref-vs-loc", cone_deg=67.5, n=8, seed=3)
    assert len(trials) == 8
    assert trials == pt.generate_trials("ref-vs-loc", cone_deg=67.5, n=8, seed=3)
    records = pt.run(trials, threads=2)
    assert {r.predicted for r in records} == {"correct"}
    counts = pt.label_counts(records)
    assert sum(c["correct"] for c in counts.values()) == 8

    natural = pt.run(pt.generate_trials("natural", gravity=True))
    assert {r.config: r.predicted for r in natural}["top"] == "correct"


def test_statistics():
    assert pt.fisher_exact([[3, 1], [1, 3]])["p_value"] == pytest.approx(0.485714, abs=1e-6)
    chi = pt.chi_squared_test([[10, 20], [20, 10]])
    assert chi["dof"] == 1
    assert chi["p_value"] == pytest.approx(0.009823, abs=1e-6)
    assert pt.tost_equivalence(500, 1000, 500, 1000)["equivalent"]
    assert pt.table1_row("natural-top") == [26, 3, 1]


def test_svg_parses():
    records = pt.run(pt.generate_trials("ref-vs-loc", n=8, seed=1))
    root = ET.fromstring(pt.render_svg(records).encode())
    ns = {"s": "http://www.w3.org/2000/svg"}
    assert root.tag.endswith("svg")
    assert len(root.findall("s:g[@class='pie']", ns)) == 8


def test_corpus_round_trip(tmp_path):
    trials = pt.generate_trials("cluttered", n=4, seed=2)
    path = tmp_path / "t.jsonl"
    pt.save_trials(str(path), trials, seed=2)
    again = tmp_path / "again.jsonl"
    pt.save_trials(str(again), pt.load_trials(str(path)), seed=2)
    assert path.read_bytes() == again.read_bytes()


def test_errors():
    with pytest.raises(pt.PointingError) as err:
        pt.generate_trials("ref-vs-loc", n=6)
    assert err.value.code == "InvalidCount"
    with pytest.raises(ValueError):
        pt.fisher_exact([[0, 0], [1, 2]])
    with pytest.raises(pt.PointingError) as err:
        pt.load_trials("/nonexistent/trials.jsonl")
    assert err.value.code == "IoError"


@pytest.mark.skipif(not os.environ.get("POINTING_CLI"), reason="POINTING_CLI not set")
def test_cli(tmp_path):
    cli = os.environ["POINTING_CLI"]
    out = tmp_path / "t.jsonl"
    done = subprocess.run([cli, "gen", "--condition", "natural", "--out", str(out)], capture_output=True, text=True)
    assert done.returncode == 0
    assert "wrote 3 trials" in done.stdout
    assert len(pt.load_trials(str(out))) == 3
    assert subprocess.run([cli, "gen"], capture_output=True).returncode == 2
