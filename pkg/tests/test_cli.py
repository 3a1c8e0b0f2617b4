import json
import subprocess
import sys

import pytest

from confdisk.cli import EXIT_NUMERIC, EXIT_OK, EXIT_SCENE, EXIT_USAGE, parse_complex, run

from conftest import SCENES


def S(name):
    return str(SCENES / name)


def call(tmp_path, *argv, name="r.json"):
    out = tmp_path / name
    code = run([*argv, "--out", str(out), "--no-timing"])
    assert code == EXIT_OK
    return json.loads(out.read_text())


def test_envelope_keys(tmp_path):
    env = call(tmp_path, "radius", "--scene", S("unit_disk.json"))
    assert set(env) == {"command", "scene_digest", "options", "results", "warnings", "timing"}
    assert env["timing"] is None and env["command"] == "radius"
    assert len(env["scene_digest"]) == 64


def test_timing_present_by_default(tmp_path):
    out = tmp_path / "r.json"
    assert run(["radius", "--scene", S("unit_disk.json"), "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["timing"]["seconds"] >= 0


# ------------------------------------------------------------------ golden tests per command


def test_radius_joukowski_motion(tmp_path):
    env = call(tmp_path, "radius", "--scene", S("joukowski.json"), "--t", "0.5,0.0")
    assert abs(env["results"]["radius"] - 1.0) < 1e-9  # [PAPER]


def test_radius_domain(tmp_path):
    env = call(tmp_path, "radius", "--scene", S("unit_disk_offset.json"))
    assert env["results"]["radius"] == pytest.approx(0.75, abs=1e-14)  # [DERIVED] 1 - 0.5^2


def test_map(tmp_path):
    env = call(tmp_path, "map", "--scene", S("segment.json"), "--n", "16")
    r = env["results"]
    assert r["radius"] == pytest.approx(1.0) and len(r["correspondence"]) == 16
    assert r["correspondence"][0][1] == pytest.approx([2.0, 0.0], abs=1e-6)  # [TRIVIAL] Z(1) = 2, radial limit tolerance


def test_hmeasure(tmp_path):
    env = call(tmp_path, "hmeasure", "--scene", S("unit_disk.json"), "--n", "64")
    r = env["results"]
    assert r["atoms"] == 64 and r["mass"] == pytest.approx(1.0, abs=1e-12)


def test_decompose(tmp_path):
    env = call(tmp_path, "decompose", "--scene", S("radial_slit.json"), "--n", "1024")
    r = env["results"]
    assert abs(r["beta_minus"] - r["beta_plus"]) < 1e-3  # [DERIVED] symmetry
    assert r["alpha"] + r["beta_minus"] + r["beta_plus"] == pytest.approx(1.0, abs=1e-12)


def test_energy_segment(tmp_path):
    env = call(tmp_path, "energy", "--scene", S("segment.json"), "--n", "512")
    assert abs(env["results"]["energy"]) < 1e-2  # [DERIVED]


def test_equilibrium(tmp_path):
    env = call(tmp_path, "equilibrium", "--scene", S("ellipse_exterior.json"), "--n", "128")
    r = env["results"]
    assert r["converged"] and r["ks_vs_harmonic"] < 0.02 and r["discrepancy"] < 2e-2


def test_wos(tmp_path):
    env = call(tmp_path, "wos", "--scene", S("unit_disk_offset.json"), "--n", "1024")
    r = env["results"]
    assert r["ks"] < 0.02 and r["lost"] == 0 and r["seed"] == 0xC0FFEE


def test_zhukovskii(tmp_path):
    env = call(tmp_path, "zhukovskii", "--scene", S("ellipse_exterior.json"))
    r = env["results"]
    assert r["radius_difference"] < 1e-9 and r["lift_residual"] < 1e-6  # [PAPER]


def test_fitness_affine_all_fail(tmp_path):
    env = call(tmp_path, "fitness", "--scene", S("ellipse_motion.json"))
    r = env["results"]
    assert r["consistent"]  # [PAPER]
    counts = r["verdict_counts"]
    assert all(counts[c].get("pass", 0) == 0 for c in counts)
    assert all(counts[c].get("fail", 0) > 0 for c in counts)


def test_fitness_single_t(tmp_path):
    env = call(tmp_path, "fitness", "--scene", S("trivial_exterior.json"), "--t", "0.3,0.2",
               "--n", "256")
    rec = env["results"]["records"]
    assert len(rec) == 1 and set(rec[0]["verdicts"].values()) == {"pass"}


def test_harmonicity(tmp_path):
    env = call(tmp_path, "harmonicity", "--scene", S("joukowski.json"))
    assert env["results"]["harmonic"] and env["results"]["max_residual"] < 1e-9
    env = call(tmp_path, "harmonicity", "--scene", S("ellipse_motion.json"))
    assert not env["results"]["harmonic"]


def test_motion_scan(tmp_path):
    env = call(tmp_path, "motion-scan", "--scene", S("trivial_exterior.json"), "--n", "128",
               "--t", "0.5,0")
    row = env["results"]["rows"][0]
    assert abs(row["h"] - row["energy"]) < 1e-2 and row["above"]


def test_motion_scan_interior_has_no_energy(tmp_path):
    env = call(tmp_path, "motion-scan", "--scene", S("ellipse_motion.json"), "--n", "128",
               "--t", "0.25,0")
    row = env["results"]["rows"][0]
    assert row["h"] is None and 0.75 <= row["radius"] <= 3.0


# ------------------------------------------------------------------ csv output


def test_csv_with_sidecar(tmp_path):
    out = tmp_path / "m.csv"
    assert run(["hmeasure", "--scene", S("unit_disk.json"), "--n", "16", "--format", "csv",
                "--out", str(out), "--no-timing"]) == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "param,point_re,point_im,weight,cumulative,tag" and len(lines) == 17
    env = json.loads((tmp_path / "m.json").read_text())
    assert env["command"] == "hmeasure"


def test_csv_to_stdout(capsys):
    assert run(["fitness", "--scene", S("joukowski.json"), "--t", "0.5,0", "--n", "64",
                "--format", "csv", "--no-timing"]) == EXIT_OK
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "t_re,t_im,dev_iii,dev_iv,dev_v,dev_vi,verdicts,consistent" and len(out) == 2


# ------------------------------------------------------------------ exit codes


@pytest.mark.parametrize("argv", [
    [],
    ["bogus", "--scene", "x.json"],
    ["radius"],
    ["radius", "--scene", S("joukowski.json"), "--t", "2,0"],
    ["radius", "--scene", S("joukowski.json"), "--t", "half"],
    ["radius", "--scene", S("joukowski.json"), "--n", "0"],
    ["radius", "--scene", S("joukowski.json"), "--seed", "-3"],
    ["radius", "--scene", S("joukowski.json"), "--format", "xml"],
])
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


@pytest.mark.parametrize("argv", [
    ["radius", "--scene", S("missing.json")],
    ["fitness", "--scene", S("unit_disk.json")],
    ["energy", "--scene", S("unit_disk.json")],
    ["zhukovskii", "--scene", S("disk_exterior.json")],
])
def test_scene_errors(argv):
    assert run(argv) == EXIT_SCENE


def test_invalid_scene_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"domain": {"kind": "unit_disk", "size": 3}}')
    assert run(["radius", "--scene", str(p)]) == EXIT_SCENE


def test_numeric_failure():
    assert run(["equilibrium", "--scene", S("segment.json"), "--n", "16", "--tol", "1e-300"]) \
        == EXIT_NUMERIC


def test_parse_complex():
    assert parse_complex("0.5,-1") == 0.5 - 1j
    with pytest.raises(Exception):
        parse_complex("1")


# ------------------------------------------------------------------ determinism and entry point


def test_byte_identical_reruns(tmp_path):
    files = []
    for k in range(2):
        out = tmp_path / f"w{k}.json"
        assert run(["wos", "--scene", S("radial_slit.json"), "--n", "256", "--threads", "2",
                    "--out", str(out), "--no-timing"]) == EXIT_OK
        files.append(out.read_bytes())
    assert files[0] == files[1]


def test_console_entry_point(tmp_path):
    out = tmp_path / "r.json"
    p = subprocess.run([sys.executable, "-m", "confdisk.cli", "radius", "--scene",
                        S("segment.json"), "--out", str(out), "--no-timing"],
                       capture_output=True, text=True)
    assert p.returncode == 0, p.stderr
    assert json.loads(out.read_text())["results"]["radius"] == pytest.approx(1.0)
