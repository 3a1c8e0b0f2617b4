import numpy as np
import pytest
from hypothesis import given, strategies as st

from confdisk.domains import (arc_slit_exterior, disk_exterior, ellipse_exterior,
                              ellipse_interior, joukowski_exterior, polygon, radial_slit_exterior,
                              segment_exterior, unit_disk)
from confdisk.geom import (Angle, ArcInterval, ArcPiece, BoundaryCurve, FourierPiece,
                           SegmentPiece, arc_contains, arc_length, boundary_distance,
                           cyclic_order, scaled_disk)

turns = st.floats(0, 1, exclude_max=True, allow_nan=False)


def _far(a, b, tol=1e-6):
    d = abs(a - b) % 1.0
    return min(d, 1 - d) > tol


# ------------------------------------------------------------------ angles and arcs


def test_angle_reduced_mod_one():
    assert Angle(1.25).turns == pytest.approx(0.25)  # [TRIVIAL]
    assert Angle(-0.25).turns == pytest.approx(0.75)  # [TRIVIAL]
    assert Angle(0.0) == Angle(1.0 - 1e-12)  # [TRIVIAL] equal within tolerance across 0
    assert Angle(0.1) != Angle(0.1 + 1e-6)  # [TRIVIAL]


@pytest.mark.parametrize("a,b,full,expected", [
    (0.0, 0.5, False, 0.5),  # [TRIVIAL] half circle
    (0.3, 0.3, True, 1.0),  # [TRIVIAL] full circle
    (0.9, 0.1, False, 0.2),  # [TRIVIAL] wraparound
    (0.3, 0.3, False, 0.0),  # [TRIVIAL] degenerate
])
def test_arc_length_examples(a, b, full, expected):
    assert arc_length(ArcInterval.from_turns(a, b, full=full)) == pytest.approx(expected, abs=1e-15)


def test_arc_contains_examples():
    assert arc_contains(ArcInterval.from_turns(0.0, 0.5), 0.25)  # [TRIVIAL]
    assert arc_contains(ArcInterval.from_turns(0.9, 0.1), 0.0)  # [TRIVIAL] wraparound
    assert not arc_contains(ArcInterval.from_turns(0.0, 0.5, closed=False), 0.5)  # [TRIVIAL]
    assert arc_contains(ArcInterval.from_turns(0.0, 0.5, closed=True), 0.5)  # [TRIVIAL]
    assert not arc_contains(ArcInterval.from_turns(0.0, 0.5), 0.75)  # [TRIVIAL]


def test_cyclic_order_examples():
    assert cyclic_order(0.0, 0.1, 0.2)  # [TRIVIAL]
    assert not cyclic_order(0.0, 0.2, 0.1)  # [TRIVIAL]
    assert cyclic_order(0.9, 0.0, 0.1)  # [TRIVIAL] wraparound
    assert cyclic_order(Angle(0.9), Angle(0.0), Angle(0.1))
    with pytest.raises(ValueError):
        cyclic_order(0.1, 0.1, 0.5)  # [TRIVIAL] coincident inputs


@given(turns, turns)
def test_arc_and_complement_add_to_one(a, b):
    if not _far(a, b):
        return
    I = ArcInterval.from_turns(a, b)
    assert arc_length(I) + arc_length(I.complement()) == pytest.approx(1.0, abs=1e-12)


@given(turns, turns, turns)
def test_arc_contains_matches_cyclic_order(a, b, c):
    if not (_far(a, b) and _far(b, c) and _far(a, c)):
        return
    assert arc_contains(ArcInterval.from_turns(a, c), b) == cyclic_order(a, b, c)


# ------------------------------------------------------------------ boundary distance


def test_boundary_distance_examples():
    disk = unit_disk().domain
    assert boundary_distance(disk, np.array([0j]))[0] == pytest.approx(1.0, abs=1e-12)  # [TRIVIAL]
    assert boundary_distance(disk, np.array([0.25 + 0j]))[0] == pytest.approx(0.75, abs=1e-12)  # [TRIVIAL]
    seg = segment_exterior().domain
    assert boundary_distance(seg, np.array([2j]))[0] == pytest.approx(2.0, abs=1e-12)  # [TRIVIAL]


def _builtin_disks():
    return [unit_disk(0.3).domain, disk_exterior(2.0).domain, segment_exterior().domain,
            joukowski_exterior(0.4).domain, ellipse_exterior(1.5, 0.5).domain,
            ellipse_interior(0.5, 256).domain, radial_slit_exterior(2.0).domain,
            arc_slit_exterior(0.25, 0.05).domain,
            polygon([-1 - 1j, 1 - 1j, 1 + 1j, -1 + 1j], 0.0, 256).domain]


BUILTIN = _builtin_disks()


@pytest.mark.parametrize("disk", BUILTIN, ids=lambda d: d.kind)
def test_boundary_distance_is_one_lipschitz(disk):
    rng = np.random.default_rng(7)
    z = rng.normal(size=200) + 1j * rng.normal(size=200)
    w = z + 0.3 * (rng.normal(size=200) + 1j * rng.normal(size=200))
    dz = boundary_distance(disk, z)
    dw = boundary_distance(disk, w)
    assert np.all(np.abs(dz - dw) <= np.abs(z - w) + 1e-9)


@pytest.mark.parametrize("disk", BUILTIN, ids=lambda d: d.kind)
def test_builtin_center_inside(disk):
    if disk.center_is_inf:
        # after the Mobius normalization w = 1/(z - anchor) the center sits at a positive distance
        assert disk.finite_center_distance() > 0
        assert bool(np.all(disk.inside(np.array([1e6 + 0j]))))
    else:
        assert bool(np.all(disk.inside(disk.center)))
        assert boundary_distance(disk, np.array([disk.center]))[0] > 0


def test_distance_to_parametric_piece():
    # ellipse 1.5 cos + 0.5 i sin as a Fourier piece: distance from 0 is the minor semi-axis
    piece = FourierPiece({1: 1.0, -1: 0.5})
    bd = BoundaryCurve([piece])
    assert bd.distance(np.array([0j]))[0] == pytest.approx(0.5, abs=1e-9)  # [TRIVIAL]
    assert bd.distance(np.array([3.0 + 0j]))[0] == pytest.approx(1.5, abs=1e-9)  # [TRIVIAL]


def test_pieces_must_chain_up():
    with pytest.raises(ValueError):
        BoundaryCurve([SegmentPiece(0j, 1 + 0j), SegmentPiece(2 + 0j, 0j)])


def test_scaled_disk_scales_boundary():
    d = scaled_disk(unit_disk().domain, 2.0)
    assert boundary_distance(d, np.array([0j]))[0] == pytest.approx(2.0)  # [TRIVIAL]
    assert bool(d.inside(np.array([1.5 + 0j]))[0])


def test_arc_piece_length():
    assert ArcPiece(0j, 2.0, 0.0, 0.25).length == pytest.approx(np.pi)  # [TRIVIAL] quarter of 4 pi
