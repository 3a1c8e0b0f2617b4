"""Acceptance criteria 1-10, one pass/fail line each.

Run under pytest (the lines are also collected into the terminal summary) or
directly with ``python tests/test_acceptance.py``.
"""
import json
import math
import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from conftest import ACCEPTANCE_LINES, SCENES  # noqa: E402

from confdisk.cli import run  # noqa: E402
from confdisk.domains import (arc_slit_exterior, disk_exterior, ellipse_exterior,  # noqa: E402
                              joukowski_exterior, radial_slit_exterior, radial_slit_for_mass,
                              segment_exterior)
from confdisk.measure import (decompose, harmonic_measure, measure_distance,  # noqa: E402
                              poisson_extend, pushforward, slit_measure_matching,
                              static_fitness_check)
from confdisk.motion import TAU, builtin_motion, harmonicity_scan, log_radius  # noqa: E402
from confdisk.potential import (arcsine_cell_masses, check_energy_radius,  # noqa: E402
                                equilibrium_measure, segment_support)
from confdisk.zhukovskii import (zhukovskii, zhukovskii_inverse_exterior,  # noqa: E402
                                 zhukovskii_lift, zhukovskii_preimage)

WOS_SCENES = ("unit_disk.json", "unit_disk_offset.json", "radial_slit.json")
SUITE_SCENES = {"trivial_disk": "trivial_disk.json", "trivial_exterior": "trivial_exterior.json",
                "joukowski": "joukowski.json", "affine_stretch": "ellipse_motion.json",
                "slit_grow": "slit_grow.json"}


def _report(k: int, ok: bool, detail: str) -> str:
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)
    return line


# ------------------------------------------------------------------ criteria


def criterion_1():
    t0 = time.perf_counter()
    M = builtin_motion("joukowski")
    ts = (0.0, 0.3, 0.3536 + 0.3536j)
    errs = [abs(M.radius(t) - 1.0) for t in ts]  # [PAPER] radius identically 1
    dt = time.perf_counter() - t0
    ok = max(errs) < 1e-9 and dt < 1.0
    return ok, f"max |rad - 1| = {max(errs):.2e} over t in {{0, 0.3, 0.3536+0.3536i}}, {dt:.2f}s"


def criterion_2():
    t0 = time.perf_counter()
    M = builtin_motion("affine_stretch", 512)
    mods = (0.25, 0.5, 0.75)
    radii = [M.radius(m) for m in mods]
    bounds = all(1 - m <= r <= 4 * (1 - m) for m, r in zip(mods, radii))  # [PAPER] Koebe
    decreasing = radii[0] > radii[1] > radii[2]
    res = harmonicity_scan(log_radius(M), [0j], [0.5]).max_residual
    dt = time.perf_counter() - t0
    ok = bounds and decreasing and res > 10 * TAU["vi"] and dt < 30
    return ok, (f"rad = {', '.join(f'{r:.5f}' for r in radii)}, in bounds {bounds}, "
                f"decreasing {decreasing}, residual {res:.4f} > {10 * TAU['vi']:g}, {dt:.1f}s")


def criterion_3():
    parts, ok = [], True
    for name, g in (("disk", disk_exterior(1.0)), ("segment", segment_exterior()),
                    ("ellipse z+0.5/z", joukowski_exterior(0.5))):
        t0 = time.perf_counter()
        d512 = check_energy_radius(g, 512).discrepancy
        d1024 = check_energy_radius(g, 1024).discrepancy
        dt = time.perf_counter() - t0
        good = d512 < 1e-2 and d1024 < d512 and dt < 10
        ok &= good
        parts.append(f"{name} {d512:.2e} -> {d1024:.2e}")
    return ok, "; ".join(parts)


def criterion_4():
    t0 = time.perf_counter()
    g = segment_exterior()
    x, L = segment_support(-2.0, 2.0, 256)
    mu, rep = equilibrium_measure(x, g.domain.boundary, L, max_iter=50_000)
    m01 = mu.mass_where((x.real >= 0) & (x.real <= 1))
    cdf = np.max(np.abs(np.cumsum(mu.weights) - np.cumsum(arcsine_cell_masses(-2, 2, 256))))
    dt = time.perf_counter() - t0
    ok = abs(m01 - 1 / 6) < 0.01 and cdf < 0.02 and dt < 30  # [DERIVED] arcsine law
    return ok, f"mass[0,1] = {m01:.5f} (1/6 = {1 / 6:.5f}), CDF sup {cdf:.4f}, {dt:.1f}s"


def _run_wos(out: Path):
    files = []
    for name in WOS_SCENES:
        f = out / f"wos_{Path(name).stem}.json"
        code = run(["wos", "--scene", str(SCENES / name), "--n", "2048", "--seed", "0xC0FFEE",
                    "--threads", "1", "--out", str(f), "--no-timing"])
        files.append((f, code))
    return files


def criterion_5(out: Path):
    t0 = time.perf_counter()
    files = _run_wos(out)
    dt = time.perf_counter() - t0
    ks = {}
    for f, code in files:
        ks[f.stem[4:]] = json.loads(f.read_text())["results"]["ks"] if code == 0 else math.inf
    ok = all(v < 0.02 for v in ks.values()) and dt < 60
    return ok, ", ".join(f"{k} KS {v:.4f}" for k, v in ks.items()) + f", {dt:.1f}s"


def criterion_6():
    t0 = time.perf_counter()
    parts, ok = [], True
    for eps in (0.05, 0.02):
        g = arc_slit_exterior(0.25, eps)
        om = harmonic_measure(g, 1024)
        d = decompose(om)
        bm, bp = d.beta_minus.mass, d.beta_plus.mass
        # asymmetry condition: the preimage arc ends closer to 1 on one side (b) than the other (a)
        s = (om.angles + 0.5) % 1.0 - 0.5
        bi = np.isin(np.array(om.tags), ["bi-minus", "bi-plus"])
        a_ext, b_ext = -s[bi].min(), s[bi].max()
        gt = radial_slit_exterior(radial_slit_for_mass(bm + bp))
        phi = slit_measure_matching(g, gt, 8192)
        dist = measure_distance(pushforward(om, phi, gt.domain.boundary), harmonic_measure(gt, 1024))
        rep = static_fitness_check(g, gt, phi, 1024)
        rel = abs(bm - bp) / max(bm, bp)
        good = b_ext < a_ext and rel > 0.05 and dist < 0.02 and not rep.fit  # [PAPER]
        ok &= good
        parts.append(f"eps {eps}: |b-1| {b_ext:.4f} < |a-1| {a_ext:.4f}, beta rel diff {rel:.3f}, "
                     f"KS {dist:.4f}, fit {rep.fit}")
    dt = time.perf_counter() - t0
    ok &= dt < 60
    return ok, "; ".join(parts) + f", {dt:.1f}s"


def criterion_7():
    rad, lift = [], []
    for g in (segment_exterior(), ellipse_exterior(1.5, 0.5)):
        L = zhukovskii_preimage(g)
        rad.append(abs(L.lifted_map.conformal_radius - g.conformal_radius))
        lift.append(L.lift_residual())
    gA, gB = ellipse_exterior(1.5, 0.5), ellipse_exterior(1.2, 0.8)
    phi = lambda z: gB(gA.map.inverse(np.asarray(z, complex)))
    psi = zhukovskii_lift(phi, zhukovskii_preimage(gA), zhukovskii_preimage(gB), 1024)
    rng = np.random.default_rng(0xC0FFEE)
    z = rng.normal(size=2000) * 2 + 1j * rng.normal(size=2000) * 2
    z = z[np.abs(z) > 1e-3]
    sym = np.max(np.abs(zhukovskii(z) - zhukovskii(1 / z)) / np.maximum(1, np.abs(zhukovskii(z))))
    w = z[np.abs(z.imag) > 1e-6]
    rt = np.max(np.abs(zhukovskii(zhukovskii_inverse_exterior(w)) - w) / np.maximum(1, np.abs(w)))
    ok = max(rad) < 1e-9 and max(lift) < 1e-6 and psi.residual < 1e-6 and sym < 1e-12 and rt < 1e-12
    return ok, (f"radius diff {max(rad):.1e}, lift residual {max(lift):.1e}, "
                f"commuting residual {psi.residual:.1e}, symmetry {sym:.1e}, round trip {rt:.1e}")


def _run_suite(out: Path):
    files = {}
    for name, scene in SUITE_SCENES.items():
        f = out / f"fitness_{name}.json"
        code = run(["fitness", "--scene", str(SCENES / scene), "--threads", "1", "--out", str(f),
                    "--no-timing"])
        files[name] = (f, code)
    return files


def _off_origin(records):
    return [v for r in records if r["t"] != [0.0, 0.0] for v in r["verdicts"].values()]


def criterion_8(out: Path):
    t0 = time.perf_counter()
    files = _run_suite(out)
    dt = time.perf_counter() - t0
    ok = dt < 300
    parts = []
    for name, (f, code) in files.items():
        if code != 0:
            ok = False
            parts.append(f"{name} exit {code}")
            continue
        res = json.loads(f.read_text())["results"]
        recs = res["records"]
        consistent = res["consistent"]
        ok &= consistent
        vals = _off_origin(recs)
        origin = [v for r in recs if r["t"] == [0.0, 0.0] for v in r["verdicts"].values()
                  if v != "n/a"]
        if name.startswith("trivial"):
            good = all(v == "pass" for v in vals + origin)
            ok &= good
            parts.append(f"{name} all-pass {good}")
        elif name == "affine_stretch":
            det = [v for v in vals if v in ("pass", "fail")]
            good = bool(det) and all(v == "fail" for v in det)
            ok &= good
            parts.append(f"{name} all-fail {good} ({vals.count('indeterminate')} indeterminate)")
        else:
            parts.append(f"{name} consistent {consistent}")
    return ok, "; ".join(parts) + f", {dt:.0f}s"


def criterion_9():
    rng = np.random.default_rng(9)
    N = 1024
    u = np.exp(2j * np.pi * np.arange(N) / N)
    z = 0.9 * np.sqrt(rng.uniform(size=400)) * np.exp(2j * np.pi * rng.uniform(size=400))
    z = np.concatenate([z, 0.9 * np.exp(2j * np.pi * np.arange(16) / 16)])
    worst = 0.0
    for _ in range(20):
        a = rng.normal(size=9) + 1j * rng.normal(size=9)
        f = np.real(sum(a[k] * u ** k for k in range(9)))
        exact = np.real(sum(a[k] * z ** k for k in range(9)))  # [TRIVIAL] harmonic extension
        worst = max(worst, float(np.max(np.abs(poisson_extend(f, z) - exact))))
    return worst < 1e-6, f"max error {worst:.2e} at |z| <= 0.9, degree 8, N = 1024"


def criterion_10(first: Path, second: Path):
    _run_wos(second)
    _run_suite(second)
    names = sorted(p.name for p in first.glob("*.json"))
    same = [(first / n).read_bytes() == (second / n).read_bytes() for n in names]
    expected = len(WOS_SCENES) + len(SUITE_SCENES)
    ok = len(names) == expected and all(same)
    return ok, f"{sum(same)}/{expected} result files byte-identical on rerun"


# ------------------------------------------------------------------ pytest entry points


@pytest.fixture(scope="module")
def outdirs(tmp_path_factory):
    return tmp_path_factory.mktemp("first"), tmp_path_factory.mktemp("second")


def _check(k, result):
    ok, detail = result
    line = _report(k, ok, detail)
    assert ok, line


def test_criterion_01_constant_exterior_radius():
    _check(1, criterion_1())


def test_criterion_02_ellipse_counterexample():
    _check(2, criterion_2())


def test_criterion_03_energy_radius_identity():
    _check(3, criterion_3())


def test_criterion_04_equilibrium_is_arcsine():
    _check(4, criterion_4())


def test_criterion_05_oracle_agreement(outdirs):
    _check(5, criterion_5(outdirs[0]))


def test_criterion_06_slit_example(outdirs):
    _check(6, criterion_6())


def test_criterion_07_zhukovskii():
    _check(7, criterion_7())


def test_criterion_08_harness_consistency(outdirs):
    _check(8, criterion_8(outdirs[0]))


def test_criterion_09_poisson_extension():
    _check(9, criterion_9())


def test_criterion_10_determinism(outdirs):
    if not any(outdirs[0].glob("*.json")):
        criterion_5(outdirs[0])
        criterion_8(outdirs[0])
    _check(10, criterion_10(*outdirs))


if __name__ == "__main__":
    with tempfile.TemporaryDirectory() as a, tempfile.TemporaryDirectory() as b:
        first, second = Path(a), Path(b)
        results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(first),
                   criterion_6(), criterion_7(), criterion_8(first), criterion_9(),
                   criterion_10(first, second)]
        for k, (ok, detail) in enumerate(results, 1):
            _report(k, ok, detail)
        sys.exit(0 if all(ok for ok, _ in results) else 1)
