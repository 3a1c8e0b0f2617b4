import math

import numpy as np
import pytest

from confdisk.domains import unit_disk
from confdisk.maps import DomainError
from confdisk.motion import (GOLDEN, TAU, MotionFamily, PreconditionError, builtin_motion,
                             default_t_grid, eval_motion, fitness_report, harmonicity_scan,
                             holomorphy_residual, induced_circle_map, intrinsic_rotation,
                             log_radius, rescale_to_constant_radius, taylor_coefficients)
from confdisk.measure import circle_deviation

KINDS = ["trivial_disk", "trivial_exterior", "joukowski", "affine_stretch", "slit_grow"]


@pytest.fixture(scope="module")
def motions():
    return {k: builtin_motion(k, 256) for k in KINDS}


# ------------------------------------------------------------------ eval_motion


def test_eval_examples():
    a, j = builtin_motion("affine_stretch"), builtin_motion("joukowski")
    assert eval_motion(a, np.array([1 + 0j]), 0.3)[0] == pytest.approx(1.3)  # [TRIVIAL]
    assert eval_motion(j, np.array([1j]), 0.5)[0] == pytest.approx(0.5j)  # [TRIVIAL]
    with pytest.raises(DomainError):
        eval_motion(a, np.array([1 + 0j]), 1.0)


@pytest.mark.parametrize("kind", KINDS)
def test_base_identity(motions, kind):
    M = motions[kind]
    z = M.base_points(64)
    assert np.array_equal(eval_motion(M, z, 0.0), z)  # [TRIVIAL]


@pytest.mark.parametrize("kind", KINDS)
def test_motion_is_holomorphic_in_t(motions, kind):
    M = motions[kind]
    rng = np.random.default_rng(5)
    z = M.base_points(128)
    for _ in range(20):
        zi = z[rng.integers(len(z))]
        t0 = 0.6 * math.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
        res = holomorphy_residual(lambda t: eval_motion(M, np.array([zi]), t), t0, 1e-4)
        assert res < 1e-6


@pytest.mark.parametrize("kind", KINDS)
def test_injectivity_spot_check(motions, kind):
    M = motions[kind]
    z = M.base_points(256)
    # two-sided slit points are sampled once per side
    keep = np.abs(z[:, None] - z[None, :]) + np.tri(len(z)) * 1.0 > 1e-9
    z = z[keep.all(axis=0)]
    for t in (0.5, -0.4j, 0.6 * np.exp(0.7j)):
        w = eval_motion(M, z, t)
        d = np.abs(w[:, None] - w[None, :]) + np.eye(len(w))
        assert d.min() > 1e-9


# ------------------------------------------------------------------ calculus


def test_holomorphy_residual_examples():
    assert holomorphy_residual(lambda t: t * t, 0.3, 1e-4) < 1e-8  # [TRIVIAL]
    assert holomorphy_residual(np.conj, 0.2 + 0.1j, 1e-3) == pytest.approx(1.0, abs=1e-9)  # [TRIVIAL]


def test_intrinsic_rotation_examples():
    g = unit_disk()
    z = np.array([0.3 + 0.2j, -0.5j])
    assert np.allclose(intrinsic_rotation(g, 0.25, z), 1j * z, atol=1e-14)  # [TRIVIAL] rigid rotation
    M = builtin_motion("trivial_disk")
    gt = M.riemann_map(0.4)
    c = gt.domain.center
    assert abs(intrinsic_rotation(gt, GOLDEN, np.array([c]))[0] - c) < 1e-12  # [TRIVIAL] fixes center


def test_intrinsic_rotation_group_law():
    g = builtin_motion("trivial_exterior").riemann_map(0.3 + 0.2j)
    z = g.map(2.0 * np.exp(2j * np.pi * np.linspace(0, 1, 7)))
    a = intrinsic_rotation(g, 0.1, intrinsic_rotation(g, 0.27, z))
    b = intrinsic_rotation(g, 0.37, z)
    assert np.max(np.abs(a - b)) < 1e-9  # [TRIVIAL]


def test_intrinsic_rotation_is_normalization_independent():
    g = builtin_motion("trivial_exterior").riemann_map(0.5j)
    z = g.map(1.7 * np.exp(2j * np.pi * np.linspace(0, 1, 5)))
    a = intrinsic_rotation(g, GOLDEN, z)
    b = intrinsic_rotation(g.rotated(0.3), GOLDEN, z)
    assert np.max(np.abs(a - b)) < 1e-9  # [PAPER]


def test_trivial_rotation_holomorphic():
    M = builtin_motion("trivial_disk")
    g0 = M.riemann_map(0.2)
    z = g0.map(np.array([0.3, 0.2j]))
    res = holomorphy_residual(lambda t: intrinsic_rotation(M.riemann_map(t), GOLDEN, z), 0.2, 1e-3)
    assert res < 1e-6  # [DERIVED]


def test_taylor_coefficients_are_holomorphic_for_fit_motion():
    M = builtin_motion("trivial_disk")
    for k in range(5):
        f = lambda t, k=k: taylor_coefficients(M.riemann_map(t), 4)[k]
        assert holomorphy_residual(f, 0.25 + 0.1j, 1e-3) < 1e-5  # [PAPER]


# ------------------------------------------------------------------ circle maps


def test_trivial_circle_map_is_identity():
    M = builtin_motion("trivial_disk", 256)
    cm = induced_circle_map(M, 0.5j, n=256)
    assert cm.deviation() < 1e-6 and cm.monotone()  # [TRIVIAL]


def test_affine_circle_map_moves():
    M = builtin_motion("affine_stretch", 512)
    cm = induced_circle_map(M, 0.5, n=512)
    assert cm.deviation() > 0.01 and cm.monotone()  # [DERIVED]


def test_rotating_base_map_rotates_circle_map():
    M = builtin_motion("trivial_exterior", 256)
    g0 = M.riemann_map(0.0).rotated(0.1)
    cm = induced_circle_map(M, 0.4, g0=g0, n=256)
    assert np.max(circle_deviation(cm.angles + 0.1, cm.sigma)) < 1e-6  # [TRIVIAL]


def test_constant_radius_motions_have_small_dev_iii():
    for M in (builtin_motion("joukowski", 256),
              rescale_to_constant_radius(builtin_motion("trivial_scaled", 256))):
        for t in (0.5, 0.3 - 0.4j):
            assert induced_circle_map(M, t, n=256).deviation() < TAU["iii"]  # [PAPER]


def test_identical_images_give_identical_maps():
    j = builtin_motion("joukowski")
    c = MotionFamily("trivial_chain", {"model": "exterior", "coeffs": [[1.0], [0.0, 1.0]]})
    z = j.base_points(64)
    for t in (0.3, -0.5j):
        assert np.max(np.abs(eval_motion(j, z, t) - eval_motion(c, z, t))) < 1e-12


# ------------------------------------------------------------------ harmonicity


def test_harmonicity_examples():
    rep = harmonicity_scan(lambda t: t.real, [0j, 0.2 + 0.1j], [0.25, 0.5])
    assert rep.max_residual < 1e-12 and rep.verdict  # [TRIVIAL]
    for r in (0.25, 0.5, 0.75):
        res = harmonicity_scan(lambda t: abs(t) ** 2, [0j], [r]).max_residual
        assert res == pytest.approx(r * r, abs=1e-12)  # [TRIVIAL]
    with pytest.raises(DomainError):
        harmonicity_scan(lambda t: 0.0, [0.5], [0.6])


def test_affine_log_radius_not_harmonic():
    M = builtin_motion("affine_stretch", 512)
    rep = harmonicity_scan(log_radius(M), [0j], [0.5])
    assert rep.max_residual > 0.05  # [DERIVED]


# ------------------------------------------------------------------ harness


SMALL_GRID = [0j, 0.5, 0.5j, -0.3 - 0.3j]


@pytest.mark.parametrize("kind", ["trivial_disk", "trivial_exterior", "joukowski"])
def test_fit_motions_pass(kind):
    rep = fitness_report(builtin_motion(kind, 256), SMALL_GRID, n=256)
    assert rep.consistent and rep.all_("pass")  # [TRIVIAL] / [PAPER]


def test_affine_motion_fails():
    rep = fitness_report(builtin_motion("affine_stretch", 256), [0j, 0.5, 0.6j], n=256)
    assert rep.consistent and rep.all_("fail")  # [PAPER]
    assert not any(v == "pass" for r in rep.records if r.t != 0 for v in r.verdicts.values())


def test_report_rows_and_dict():
    rep = fitness_report(builtin_motion("joukowski", 128), [0j, 0.5], n=128)
    rows = list(rep.rows())
    assert len(rows) == 2 and rows[0][6].startswith("iii=n/a")
    d = rep.as_dict()
    assert d["consistent"] and len(d["records"]) == 2


def test_default_grid():
    g = default_t_grid()
    assert len(g) == 49 and g[0] == 0 and np.all(np.abs(g) < 1)  # [TRIVIAL]


def test_fitness_rejects_outside_grid():
    with pytest.raises(DomainError):
        fitness_report(builtin_motion("joukowski"), [1.2])


# ------------------------------------------------------------------ rescaling


def test_rescale_joukowski_unchanged():
    M = builtin_motion("joukowski")
    R = rescale_to_constant_radius(M)
    for t in (0.3, 0.5j):
        assert abs(R.radius(t) - 1.0) < 1e-9  # [PAPER]
        z = M.base_points(16)
        assert np.max(np.abs(R.eval(z, t) - M.eval(z, t))) < 1e-9


def test_rescale_exp_scaled_chain():
    R = rescale_to_constant_radius(builtin_motion("trivial_scaled"))
    r = [R.radius(t) for t in default_t_grid()]
    assert max(abs(math.log(x)) for x in r) < 2 * TAU["vi"]  # [DERIVED]


def test_rescale_affine_refused():
    with pytest.raises(PreconditionError):
        rescale_to_constant_radius(builtin_motion("affine_stretch", 256))  # [TRIVIAL]
