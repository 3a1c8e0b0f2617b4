"""Scene files: JSON description of a pointed disk, an optional motion and run options.

Complex numbers are two-element arrays ``[re, im]``; the infinite center is
the string ``"inf"``. Parsing normalizes the scene (defaults filled in,
numbers coerced), so ``parse(serialize(parse(x)))`` equals ``parse(x)``.
"""
from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from .confmap import RiemannMap, build_zipper_map
from .domains import BUILDERS, SceneError, ellipse_exterior
from .geom import INF, is_inf
from .motion import MotionFamily
from .wos import DEFAULT_SEED

TOP_KEYS = ("domain", "center", "marked_point", "motion", "options")

# parameter name -> (type, default); "req" marks a required parameter
DOMAIN_KINDS = {
    "unit_disk": {},
    "disk_exterior": {"radius": ("real", 1.0)},
    "segment_exterior": {"a": ("complex", -2.0), "b": ("complex", 2.0)},
    "joukowski_exterior": {"t": ("complex", 0.0)},
    "ellipse_interior": {"t": ("complex", 0.0)},
    "ellipse_exterior": {"a": ("real", 1.5), "b": ("real", 0.5)},
    "radial_slit_exterior": {"p_tilde": ("real", 2.0)},
    "segment_slit_exterior": {"p": ("complex", 2.0)},
    "arc_slit_exterior": {"delta": ("real", 0.25), "epsilon": ("real", 0.05)},
    "polygon": {"points": ("points", "req")},
    "points": {"points": ("points", "req"), "layout": ("layout", "jordan")},
}
EXTERIOR_KINDS = {"disk_exterior", "segment_exterior", "joukowski_exterior", "ellipse_exterior",
                  "radial_slit_exterior", "segment_slit_exterior", "arc_slit_exterior"}
# kinds whose size depends on the sample count n
SAMPLED_KINDS = {"ellipse_interior", "segment_slit_exterior", "polygon"}

MOTION_KINDS = {
    "affine_stretch": {},
    "joukowski": {},
    "trivial_chain": {"model": ("model", "disk"), "coeffs": ("polys", "req"),
                      "scale": ("scale", None)},
    "slit_grow": {"coeffs": ("poly", [3.0, 2.0])},
}

OPTION_KEYS = {
    "n": ("int", 512),
    "seed": ("seed", DEFAULT_SEED),
    "tol": ("pos", None),
    "threads": ("int", None),
    "samples": ("int", 100_000),
    "t": ("t", None),
    "t_grid": ("tlist", None),
}


def _complex(v, what: str) -> complex:
    if isinstance(v, bool):
        raise SceneError(f"{what}: expected a number or [re, im]")
    if isinstance(v, (int, float)):
        z = complex(float(v), 0.0)
    elif isinstance(v, (list, tuple)) and len(v) == 2 and all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
        z = complex(float(v[0]), float(v[1]))
    else:
        raise SceneError(f"{what}: expected a number or [re, im]")
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SceneError(f"{what}: not finite")
    return z


def _real(v, what: str) -> float:
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise SceneError(f"{what}: expected a finite real number")
    return float(v)


def _int(v, what: str, lo: int = 1, hi: Optional[int] = None) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise SceneError(f"{what}: expected an integer")
    if v < lo or (hi is not None and v > hi):
        raise SceneError(f"{what}: {v} out of range")
    return int(v)


def _t(v, what: str) -> complex:
    t = _complex(v, what)
    if abs(t) >= 1:
        raise SceneError(f"{what}: need |t| < 1")
    return t


def _check_keys(d, allowed, what: str):
    if not isinstance(d, dict):
        raise SceneError(f"{what}: expected an object")
    extra = sorted(set(d) - set(allowed))
    if extra:
        raise SceneError(f"{what}: unknown key(s) {', '.join(extra)}")


def _coerce(kind: str, v, what: str):
    if kind == "real":
        return _real(v, what)
    if kind == "complex":
        return _complex(v, what)
    if kind == "points":
        if not isinstance(v, list) or len(v) < 3:
            raise SceneError(f"{what}: expected a list of at least 3 points")
        return [_complex(p, f"{what}[{i}]") for i, p in enumerate(v)]
    if kind == "layout":
        if v not in ("jordan", "slit"):
            raise SceneError(f"{what}: layout must be 'jordan' or 'slit'")
        return v
    if kind == "model":
        if v not in ("disk", "exterior"):
            raise SceneError(f"{what}: model must be 'disk' or 'exterior'")
        return v
    if kind == "scale":
        if v not in (None, "exp"):
            raise SceneError(f"{what}: scale must be null or 'exp'")
        return v
    if kind == "poly":
        if not isinstance(v, list) or not v:
            raise SceneError(f"{what}: expected a non-empty coefficient list")
        return [_complex(c, f"{what}[{i}]") for i, c in enumerate(v)]
    if kind == "polys":
        if not isinstance(v, list) or not v:
            raise SceneError(f"{what}: expected a list of coefficient lists")
        return [_coerce("poly", p, f"{what}[{i}]") for i, p in enumerate(v)]
    raise AssertionError(kind)


def _params(schema: dict, given: dict, what: str) -> dict:
    _check_keys(given, list(schema), what)
    out = {}
    for name, (kind, default) in schema.items():
        if name in given:
            out[name] = _coerce(kind, given[name], f"{what}.{name}")
        elif default == "req":
            raise SceneError(f"{what}: missing {name}")
        elif default is not None:
            out[name] = _coerce(kind, default, f"{what}.{name}")
    return out


def _center(v) -> complex:
    if isinstance(v, str):
        if v != "inf":
            raise SceneError("center: expected [re, im] or \"inf\"")
        return INF
    return _complex(v, "center")


@dataclass
class Scene:
    domain: Optional[dict]
    center: Optional[complex]
    marked_point: Optional[complex] = None
    motion: Optional[dict] = None
    options: dict = field(default_factory=dict)

    # ---------------------------------------------------------- serialization
    def to_json(self) -> dict:
        return {
            "domain": None if self.domain is None else {k: _enc(v) for k, v in self.domain.items()},
            "center": None if self.center is None else ("inf" if is_inf(self.center)
                                                        else _enc(self.center)),
            "marked_point": None if self.marked_point is None else _enc(self.marked_point),
            "motion": None if self.motion is None else {
                "kind": self.motion["kind"],
                "params": {k: _enc(v) for k, v in self.motion["params"].items()}},
            "options": {k: _enc(v) for k, v in self.options.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))

    @property
    def digest(self) -> str:
        return hashlib.sha256(self.dumps().encode()).hexdigest()

    def option(self, key: str, default: Any = None):
        v = self.options.get(key)
        return default if v is None else v

    # ---------------------------------------------------------- builders
    def build_motion(self, n: int) -> Optional[MotionFamily]:
        if self.motion is None:
            return None
        try:
            return MotionFamily(self.motion["kind"], dict(self.motion["params"]), n)
        except ValueError as e:
            raise SceneError(f"motion: {e}") from e

    def build_map(self, n: int, t: Optional[complex] = None) -> RiemannMap:
        """Riemann map of the scene domain; with a motion and no domain, of its disk at ``t``."""
        if self.domain is None:
            M = self.build_motion(n)
            return M.riemann_map(0j if t is None else t)
        kind = self.domain["kind"]
        p = {k: v for k, v in self.domain.items() if k != "kind"}
        if t is not None:
            if "t" not in DOMAIN_KINDS[kind]:
                raise SceneError(f"domain kind {kind} has no parameter t")
            p["t"] = t
        if kind == "unit_disk":
            return BUILDERS[kind](self.center, self.marked_point)
        if kind == "ellipse_exterior":
            return ellipse_exterior(p["a"], p["b"])
        if kind == "polygon":
            return BUILDERS[kind](p["points"], self.center, n)
        if kind == "points":
            norm = "derivative" if self.marked_point is None else "marked"
            return build_zipper_map(p["points"], self.center, layout=p["layout"], normalize=norm)
        if kind in SAMPLED_KINDS:
            p["n"] = n
        return BUILDERS[kind](**p)


def _enc(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, list):
        return [_enc(x) for x in v]
    return v


def parse(data) -> Scene:
    """Validate a decoded scene object and return the normalized Scene."""
    _check_keys(data, TOP_KEYS, "scene")
    dom = data.get("domain")
    mot = data.get("motion")
    if dom is None and mot is None:
        raise SceneError("scene needs a domain or a motion")

    motion = None
    if mot is not None:
        _check_keys(mot, ("kind", "params"), "motion")
        kind = mot.get("kind")
        if kind not in MOTION_KINDS:
            raise SceneError(f"motion: unknown kind {kind!r}")
        params = _params(MOTION_KINDS[kind], mot.get("params") or {}, "motion.params")
        if kind == "trivial_chain" and params.get("model") == "exterior" and len(params["coeffs"]) != 2:
            raise SceneError("motion.params.coeffs: the exterior model needs two polynomials [a, b]")
        if kind == "slit_grow":
            p0 = params["coeffs"][0]
            if abs(p0.imag) > 1e-12 or not p0.real > 1:
                raise SceneError("motion.params.coeffs: slit tip p(0) must be real and > 1")
        motion = {"kind": kind, "params": params}

    domain = None
    center = None
    marked = None
    if dom is not None:
        if not isinstance(dom, dict) or dom.get("kind") not in DOMAIN_KINDS:
            raise SceneError(f"domain: unknown kind {dom.get('kind') if isinstance(dom, dict) else dom!r}")
        kind = dom["kind"]
        params = _params(DOMAIN_KINDS[kind], {k: v for k, v in dom.items() if k != "kind"},
                         "domain")
        for name in ("t",):
            if name in params and abs(params[name]) >= 1:
                raise SceneError("domain.t: need |t| < 1")
        if kind == "radial_slit_exterior" and not params["p_tilde"] > 1:
            raise SceneError("domain.p_tilde: need p_tilde > 1")
        if kind == "segment_slit_exterior" and not params["p"].real > 1:
            raise SceneError("domain.p: slit endpoint needs Re p > 1")
        if kind == "disk_exterior" and not params["radius"] > 0:
            raise SceneError("domain.radius: must be positive")
        if kind == "ellipse_exterior" and not params["a"] > params["b"] >= 0:
            raise SceneError("domain: need a > b >= 0")
        if kind == "arc_slit_exterior":
            if not 0 < params["delta"] < 0.5 or not 0 < params["epsilon"] < params["delta"]:
                raise SceneError("domain: need 0 < epsilon < delta < 1/2")
        if kind == "segment_exterior" and params["a"] == params["b"]:
            raise SceneError("domain: degenerate segment")
        domain = {"kind": kind, **params}

        raw_c = data.get("center")
        if kind in EXTERIOR_KINDS:
            if raw_c is not None and not is_inf(_center(raw_c)):
                raise SceneError(f"center: {kind} is centered at infinity")
            center = INF
        elif kind == "ellipse_interior":
            if raw_c is not None and _center(raw_c) != 0:
                raise SceneError("center: ellipse_interior is centered at 0")
            center = 0j
        elif kind == "unit_disk":
            center = 0j if raw_c is None else _center(raw_c)
            if is_inf(center) or abs(center) >= 1:
                raise SceneError("center: must lie in the unit disk")
        else:
            if raw_c is None:
                raise SceneError(f"center: required for {kind}")
            center = _center(raw_c)

        if data.get("marked_point") is not None:
            if kind not in ("unit_disk", "points"):
                raise SceneError(f"marked_point: fixed by the builtin kind {kind}")
            marked = _complex(data["marked_point"], "marked_point")
            if kind == "unit_disk" and abs(abs(marked) - 1) > 1e-9:
                raise SceneError("marked_point: must lie on the unit circle")
            if kind == "points" and abs(marked - domain["points"][0]) > 0:
                raise SceneError("marked_point: must be the first listed point")
    else:
        if data.get("center") is not None or data.get("marked_point") is not None:
            raise SceneError("center/marked_point are fixed by the motion when no domain is given")

    opts = data.get("options") or {}
    _check_keys(opts, OPTION_KEYS, "options")
    options = {}
    for k, v in opts.items():
        kind = OPTION_KEYS[k][0]
        if v is None:
            continue
        if kind == "int":
            options[k] = _int(v, f"options.{k}", 8 if k == "n" else 1)
        elif kind == "seed":
            options[k] = _int(v, "options.seed", 0, 2 ** 64 - 1)
        elif kind == "pos":
            x = _real(v, f"options.{k}")
            if not x > 0:
                raise SceneError(f"options.{k}: must be positive")
            options[k] = x
        elif kind == "t":
            options[k] = _t(v, f"options.{k}")
        elif kind == "tlist":
            if not isinstance(v, list) or not v:
                raise SceneError(f"options.{k}: expected a non-empty list")
            options[k] = [_t(x, f"options.{k}[{i}]") for i, x in enumerate(v)]
    return Scene(domain, center, marked, motion, options)


def loads(text: str) -> Scene:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise SceneError(f"scene is not valid JSON: {e}") from e
    return parse(data)


def load(path) -> Scene:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise SceneError(f"cannot read scene {path}: {e}") from e
    return loads(text)
