import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from confdisk.domains import SceneError
from confdisk.geom import is_inf
from confdisk.scene import DOMAIN_KINDS, load, loads, parse

from conftest import SCENES


@pytest.mark.parametrize("path", sorted(SCENES.glob("*.json")), ids=lambda p: p.stem)
def test_builtin_scenes_parse_and_round_trip(path):
    sc = load(path)
    again = parse(json.loads(sc.dumps()))
    assert again == sc
    assert again.digest == sc.digest


@pytest.mark.parametrize("path", sorted(SCENES.glob("*.json")), ids=lambda p: p.stem)
def test_builtin_scenes_build(path):
    sc = load(path)
    g = sc.build_map(128)
    assert g.conformal_radius > 0


def test_defaults_filled_in():
    sc = loads('{"domain": {"kind": "radial_slit_exterior"}}')
    assert sc.domain == {"kind": "radial_slit_exterior", "p_tilde": 2.0}
    assert is_inf(sc.center)


def test_complex_coercion():
    sc = loads('{"domain": {"kind": "joukowski_exterior", "t": [0.3, 0.1]}}')
    assert sc.domain["t"] == 0.3 + 0.1j
    sc = loads('{"domain": {"kind": "joukowski_exterior", "t": 0.3}}')
    assert sc.domain["t"] == 0.3 + 0j


@pytest.mark.parametrize("text", [
    '{"domain": {"kind": "unit_disk"}, "colour": 1}',
    '{"domain": {"kind": "unit_disk", "radius": 2}}',
    '{"motion": {"kind": "joukowski", "params": {"speed": 1}}}',
    '{"domain": {"kind": "unit_disk"}, "options": {"verbose": true}}',
    '{"motion": {"kind": "joukowski", "extra": 1}}',
])
def test_unknown_keys_rejected(text):
    with pytest.raises(SceneError, match="unknown"):
        loads(text)


@pytest.mark.parametrize("text", [
    '{}',
    '{"domain": {"kind": "moebius_band"}}',
    '{"domain": {"kind": "joukowski_exterior", "t": [0.8, 0.8]}}',
    '{"domain": {"kind": "radial_slit_exterior", "p_tilde": 0.5}}',
    '{"domain": {"kind": "arc_slit_exterior", "delta": 0.25, "epsilon": 0.3}}',
    '{"domain": {"kind": "unit_disk"}, "center": [1.5, 0]}',
    '{"domain": {"kind": "unit_disk"}, "marked_point": [0.5, 0]}',
    '{"domain": {"kind": "segment_exterior"}, "center": [0, 0]}',
    '{"domain": {"kind": "polygon", "points": [[0, 0], [1, 0], [0, 1]]}}',
    '{"domain": {"kind": "polygon", "points": [[0, 0], [1, 0]]}, "center": [0.2, 0.2]}',
    '{"motion": {"kind": "joukowski"}, "center": [0, 0]}',
    '{"motion": {"kind": "slit_grow", "params": {"coeffs": [0.5]}}}',
    '{"motion": {"kind": "trivial_chain", "params": {"model": "exterior", "coeffs": [[1]]}}}',
    '{"domain": {"kind": "unit_disk"}, "options": {"t_grid": [[0.5, 0], [1.0, 0]]}}',
    '{"domain": {"kind": "unit_disk"}, "options": {"n": 4}}',
    '{"domain": {"kind": "unit_disk"}, "options": {"seed": -1}}',
    '{"domain": {"kind": "disk_exterior", "radius": true}}',
    'not json',
])
def test_invalid_scenes(text):
    with pytest.raises(SceneError):
        loads(text)


def test_missing_file():
    with pytest.raises(SceneError, match="cannot read"):
        load(SCENES / "nope.json")


def test_t_override_needs_t_domain():
    sc = loads('{"domain": {"kind": "unit_disk"}}')
    with pytest.raises(SceneError):
        sc.build_map(64, 0.3)
    sc = loads('{"domain": {"kind": "joukowski_exterior"}}')
    assert sc.build_map(64, 0.3).conformal_radius == pytest.approx(1.0, abs=1e-12)


def test_points_scene_builds_zipper():
    pts = np.exp(2j * np.pi * np.arange(64) / 64)
    sc = parse({"domain": {"kind": "points", "points": [[z.real, z.imag] for z in pts]},
                "center": [0, 0], "marked_point": [1, 0]})
    g = sc.build_map(64)
    assert g.conformal_radius == pytest.approx(1.0, abs=1e-2)


# ------------------------------------------------------------------ round-trip property

num = st.floats(-0.6, 0.6, allow_nan=False).map(lambda x: round(x, 6))
cplx = st.tuples(num, num).map(list)

domains = st.one_of(
    st.just({"kind": "unit_disk"}),
    st.builds(lambda r: {"kind": "disk_exterior", "radius": r}, st.floats(0.1, 5)),
    st.builds(lambda t: {"kind": "joukowski_exterior", "t": t}, cplx),
    st.builds(lambda t: {"kind": "ellipse_interior", "t": t}, cplx),
    st.builds(lambda p: {"kind": "radial_slit_exterior", "p_tilde": p}, st.floats(1.01, 10)),
    st.builds(lambda e: {"kind": "arc_slit_exterior", "delta": 0.25, "epsilon": e},
              st.floats(0.001, 0.24)),
    st.builds(lambda a, b: {"kind": "segment_exterior", "a": [a - 1, 0], "b": [b + 1, 0]}, num, num),
)
motions = st.one_of(
    st.just({"kind": "affine_stretch"}),
    st.just({"kind": "joukowski", "params": {}}),
    st.builds(lambda c: {"kind": "trivial_chain", "params": {"coeffs": [[0], [1], [0, c]]}}, num),
    st.builds(lambda c: {"kind": "slit_grow", "params": {"coeffs": [3, c]}}, num),
)
options = st.fixed_dictionaries({}, optional={
    "n": st.integers(8, 4096), "seed": st.integers(0, 2 ** 64 - 1),
    "t": cplx, "t_grid": st.lists(cplx, min_size=1, max_size=4), "tol": st.floats(1e-12, 1)})


@given(st.one_of(domains.map(lambda d: {"domain": d}),
                 motions.map(lambda m: {"motion": m})), options)
def test_parse_serialize_parse_idempotent(base, opts):
    data = dict(base, options=opts)
    first = parse(data)
    second = parse(json.loads(first.dumps()))
    assert second == first
    assert second.dumps() == first.dumps()


def test_domain_kinds_cover_builtins():
    assert {"unit_disk", "disk_exterior", "segment_exterior", "joukowski_exterior",
            "ellipse_interior", "radial_slit_exterior", "arc_slit_exterior",
            "polygon"} <= set(DOMAIN_KINDS)
