"""Builtin pointed disks together with their Riemann maps."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .confmap import RiemannMap, build_zipper_map
from .geom import INF, ArcPiece, BoundaryCurve, FourierPiece, PointedDisk, SegmentPiece
from .maps import (Affine, ConformalMap, Joukowski, JoukowskiExteriorInverse, Laurent, Mobius,
                   NumericError, Primitive, disk_automorphism)


class SceneError(ValueError):
    """Invalid domain parameters."""


def _circle(radius=1.0, start=0.0, span=1.0, center=0j):
    return ArcPiece(complex(center), float(radius), start, span)


# ------------------------------------------------------------------ disks


def unit_disk(center: complex = 0.0, marked_point=None) -> RiemannMap:
    c = complex(center)
    if abs(c) >= 1:
        raise SceneError("center must lie in the unit disk")
    A = disk_automorphism(c)
    chain = [A]
    norm = "derivative"
    start = 0.0
    if marked_point is not None:
        s = complex(marked_point)
        if abs(abs(s) - 1) > 1e-9:
            raise SceneError("marked point must lie on the unit circle")
        u = complex(A.inverse(np.array([s]))[0])
        rot = Affine(u / abs(u))
        rot.is_rotation = True
        chain = [rot, A]
        norm = "marked"
        start = math.atan2(s.imag, s.real) / (2 * math.pi)
    bd = BoundaryCurve([_circle(1.0, start, 1.0)])
    dom = PointedDisk(bd, c, marked_point, "unit_disk", {"center": c},
                      inside_fn=lambda z: np.abs(z) < 1)
    return RiemannMap(ConformalMap(chain, "disk", "unit_disk"), dom, "disk", norm,
                      0.0 if norm == "marked" else None)


def disk_exterior(radius: float = 1.0) -> RiemannMap:
    r = float(radius)
    if r <= 0:
        raise SceneError("radius must be positive")
    bd = BoundaryCurve([_circle(r)], domain_on_left=False)
    dom = PointedDisk(bd, INF, r + 0j, "disk_exterior", {"radius": r},
                      inside_fn=lambda z: np.abs(z) > r)
    return RiemannMap(ConformalMap([Affine(r)], "exterior", "disk_exterior"), dom, "exterior",
                      "marked", 0.0)


def segment_exterior(a: complex = -2.0, b: complex = 2.0) -> RiemannMap:
    """Complement of the segment [a, b]; g = (b-a)/4 Z + (a+b)/2 with g(1) = b."""
    a, b = complex(a), complex(b)
    if a == b:
        raise SceneError("degenerate segment")
    chain = [Joukowski(), Affine((b - a) / 4, (a + b) / 2)]
    bd = BoundaryCurve([SegmentPiece(b, a, slit=0, side="minus"),
                        SegmentPiece(a, b, slit=0, side="plus")], domain_on_left=False)
    seg = bd.pieces[0]
    dom = PointedDisk(bd, INF, b, "segment_exterior", {"a": a, "b": b},
                      inside_fn=lambda z: seg.distance(z) > 1e-12)
    return RiemannMap(ConformalMap(chain, "exterior", "segment_exterior"), dom, "exterior",
                      "marked", 0.0)


def joukowski_exterior(t: complex = 0.0) -> RiemannMap:
    """Exterior of the ellipse w + t/w (|w| = 1); g(w) = w + t/w, radius 1."""
    t = complex(t)
    if abs(t) >= 1:
        raise SceneError("need |t| < 1")
    lm = Laurent(1.0, t)
    bd = BoundaryCurve([FourierPiece({1: 1.0 + 0j, -1: t})], domain_on_left=False)

    def inside(z):
        z = np.asarray(z, complex)
        return np.abs(lm.inverse(z)) > 1 + 1e-12

    dom = PointedDisk(bd, INF, 1 + t, "joukowski_exterior", {"t": t}, inside_fn=inside)
    return RiemannMap(ConformalMap([lm], "exterior", "joukowski_exterior"), dom, "exterior",
                      "marked", 0.0)


def ellipse_exterior(a: complex = 1.5, b: complex = 0.5) -> RiemannMap:
    """Exterior of the image of the unit circle under w -> a w + b/w (|b| < |a|);
    g(1) = a + b, radius |a|."""
    a, b = complex(a), complex(b)
    if not abs(b) < abs(a):
        raise SceneError("need |b| < |a|")
    lm = Laurent(a, b)
    bd = BoundaryCurve([FourierPiece({1: a, -1: b})], domain_on_left=False)

    def inside(z):
        return np.abs(lm.inverse(np.asarray(z, complex))) > 1 + 1e-12

    dom = PointedDisk(bd, INF, a + b, "ellipse_exterior", {"a": a, "b": b}, inside_fn=inside)
    return RiemannMap(ConformalMap([lm], "exterior", "ellipse_exterior"), dom, "exterior",
                      "marked", 0.0)


def ellipse_points(t: complex, n: int) -> np.ndarray:
    u = np.exp(2j * np.pi * np.arange(n) / n)
    return u + complex(t) * np.conj(u)


def ellipse_interior(t: complex = 0.0, n: int = 1024) -> RiemannMap:
    """Image of the unit disk under z -> z + t conj(z); zipper map with g(1) = 1 + t."""
    t = complex(t)
    if abs(t) >= 1:
        raise SceneError("need |t| < 1")
    bd = BoundaryCurve([FourierPiece({1: 1.0 + 0j, -1: t})])

    def inside(z):
        z = np.asarray(z, complex)
        zeta = (z - t * np.conj(z)) / (1 - abs(t) ** 2)
        return np.abs(zeta) < 1

    dom = PointedDisk(bd, 0.0, 1 + t, "ellipse_interior", {"t": t, "n": n}, inside_fn=inside)
    return build_zipper_map(ellipse_points(t, n), 0.0, normalize="marked", domain=dom)


# ------------------------------------------------------------------ slit domains


def radial_slit_params(p_tilde: float):
    """(a, b) with g = Zext^-1(a Z + b) mapping the exterior disk onto the
    complement of the closed unit disk and the slit [1, p_tilde]."""
    q = p_tilde + 1.0 / p_tilde
    return (q + 2) / 4, (q - 2) / 2


def radial_slit_mass(p_tilde: float) -> float:
    """Harmonic measure of the slit [1, p_tilde] seen from infinity."""
    q = p_tilde + 1.0 / p_tilde
    return math.acos((6 - q) / (q + 2)) / math.pi


def radial_slit_for_mass(mass: float) -> float:
    """Inverse of :func:`radial_slit_mass`."""
    if not 0 < mass < 1:
        raise ValueError("mass must lie in (0, 1)")
    c = math.cos(math.pi * mass)
    q = (6 - 2 * c) / (1 + c)
    return (q + math.sqrt(q * q - 4)) / 2


def _slit_exterior_disk(pieces_slit, kind, params, tip, slit_piece):
    bd = BoundaryCurve([pieces_slit[0], _circle(1.0), pieces_slit[1]], domain_on_left=False)

    def inside(z):
        z = np.asarray(z, complex)
        return (np.abs(z) > 1) & (slit_piece.distance(z) > 1e-12)

    return PointedDisk(bd, INF, tip, kind, params, inside_fn=inside)


def radial_slit_exterior(p_tilde: float = 2.0) -> RiemannMap:
    p = float(np.real(p_tilde))
    if not p > 1:
        raise SceneError("p_tilde must be a real number > 1")
    a, b = radial_slit_params(p)
    chain = [Joukowski(), Affine(a, b), JoukowskiExteriorInverse()]
    down = SegmentPiece(p + 0j, 1 + 0j, slit=0, side="minus")
    up = SegmentPiece(1 + 0j, p + 0j, slit=0, side="plus")
    dom = _slit_exterior_disk([down, up], "radial_slit_exterior", {"p_tilde": p}, p + 0j, down)
    return RiemannMap(ConformalMap(chain, "exterior", "radial_slit_exterior"), dom, "exterior",
                      "marked", 0.0)


def segment_slit_exterior(p: complex = 2.0, n: int = 512) -> RiemannMap:
    """Complement of the closed unit disk and the straight slit [1, p]
    (zipper map, g(1) = p). The slit must leave the disk, Re p > 1."""
    p = complex(p)
    if not p.real > 1:
        raise SceneError("slit endpoint needs Re p > 1")
    th = np.arange(1, n) / n
    pts = np.concatenate([[p, 1.0 + 0j], np.exp(2j * np.pi * th), [1.0 + 0j]])
    down = SegmentPiece(p, 1 + 0j, slit=0, side="minus")
    up = SegmentPiece(1 + 0j, p, slit=0, side="plus")
    dom = _slit_exterior_disk([down, up], "segment_slit_exterior", {"p": p, "n": n}, p, down)
    return build_zipper_map(pts, INF, layout="slit", normalize="marked", domain=dom)


@dataclass
class HalfPlaneRayMap(Primitive):
    """F(z) = (h/pi)(z - 1 - log z) + i h + u: upper half-plane onto itself
    minus the horizontal ray {Im = h, Re >= u}; F(1) is the tip."""

    h: float
    u: float
    name = "halfplane_ray"

    def _log(self, z):
        z = np.asarray(z, complex)
        arg = np.clip(np.angle(z), 0.0, np.pi)
        # points a hair below the real axis keep their side
        arg = np.where((z.imag <= 0) & (z.real < 0), np.pi, arg)
        return np.log(np.abs(z)) + 1j * arg

    def __call__(self, z):
        z = np.asarray(z, complex)
        return (self.h / np.pi) * (z - 1 - self._log(z)) + 1j * self.h + self.u

    def deriv(self, z):
        z = np.asarray(z, complex)
        return (self.h / np.pi) * (1 - 1 / z)

    def coefficients(self):
        return [self.h, self.u]


def arc_slit_geometry(delta: float, epsilon: float):
    """Circle (center -x, radius 1 + x) through 1 and p = (1+eps) e^{2 pi i delta},
    internally tangent to the unit circle at 1, and the arc from 1 to p."""
    p = (1 + epsilon) * np.exp(2j * np.pi * delta)
    r, th = abs(p), 2 * np.pi * delta
    x = (r * r - 1) / (2 * (1 - r * math.cos(th)))
    c = -x
    span = np.angle(p - c) / (2 * np.pi)
    return complex(p), x, ArcPiece(complex(c), 1 + x, 0.0, float(span), slit=0, side="plus")


def arc_slit_exterior(delta: float = 0.25, epsilon: float = 0.05) -> RiemannMap:
    """Complement of the closed unit disk and a circular arc from 1 to
    p = (1+eps) e^{2 pi i delta}; closed-form map with g(1) = p."""
    if not (0 < delta < 0.5) or not epsilon > 0:
        raise SceneError("need 0 < delta < 1/2 and epsilon > 0")
    p, x, up = arc_slit_geometry(delta, epsilon)
    h = x / (1 + x)
    M = Mobius(1j, 1j, 1.0, -1.0)  # z -> i(z+1)/(z-1): exterior disk onto the upper half-plane
    up_p = complex(M(np.array([p]))[0])
    F = HalfPlaneRayMap(h, up_p.real)
    zc = _solve_center(F)
    K = Mobius(-np.conj(zc), zc, -1.0, 1.0)
    lam = (1 - zc) / (1 - np.conj(zc))
    chain = [Mobius(0.0, lam, 1.0, 0.0), K, F, Mobius(1.0, 1j, 1.0, -1j)]
    down = up.reversed()
    down.side = "minus"
    dom = _slit_exterior_disk([down, up], "arc_slit_exterior",
                              {"delta": delta, "epsilon": epsilon}, p, up)
    return RiemannMap(ConformalMap(chain, "exterior", "arc_slit_exterior"), dom, "exterior",
                      "marked", 0.0)


def _solve_center(F: HalfPlaneRayMap) -> complex:
    """Solve F(z) = i in the upper half-plane."""
    best = None
    for re in np.linspace(-4, 4, 9):
        for im in (0.5, 1.0, 2.0, 4.0):
            z = complex(re, im)
            for _ in range(100):
                step = (complex(F(np.array([z]))[0]) - 1j) / complex(F.deriv(np.array([z]))[0])
                z_new = z - step
                while z_new.imag <= 0:
                    step /= 2
                    z_new = z - step
                z = z_new
                if abs(step) < 1e-15 * max(1.0, abs(z)):
                    break
            res = abs(complex(F(np.array([z]))[0]) - 1j)
            if res < 1e-13 and (best is None or res < best[0]):
                best = (res, z)
        if best is not None:
            break
    if best is None:
        raise NumericError("could not locate the preimage of the center")
    return best[1]


# ------------------------------------------------------------------ polygons


def densify(vertices, n: int) -> np.ndarray:
    """About ``n`` points along the closed polygon, vertices included, arclength-spaced."""
    v = np.asarray(vertices, complex)
    edges = np.roll(v, -1) - v
    lens = np.abs(edges)
    total = lens.sum()
    out = []
    for vi, e, L in zip(v, edges, lens):
        m = max(1, int(round(n * L / total)))
        out.append(vi + e * np.arange(m) / m)
    return np.concatenate(out)


def polygon(vertices, center, n: int = 1024) -> RiemannMap:
    v = np.asarray(vertices, complex)
    if len(v) < 3:
        raise SceneError("polygon needs at least 3 vertices")
    area = 0.5 * np.sum((np.conj(v) * np.roll(v, -1)).imag)
    if area < 0:
        v = v[::-1]
        v = np.roll(v, 1)
    pts = densify(v, n)
    return build_zipper_map(pts, complex(center), normalize="marked")


BUILDERS = {
    "unit_disk": unit_disk,
    "disk_exterior": disk_exterior,
    "segment_exterior": segment_exterior,
    "joukowski_exterior": joukowski_exterior,
    "ellipse_interior": ellipse_interior,
    "radial_slit_exterior": radial_slit_exterior,
    "segment_slit_exterior": segment_slit_exterior,
    "arc_slit_exterior": arc_slit_exterior,
    "polygon": polygon,
}
