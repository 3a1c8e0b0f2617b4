"""Zhukovskii double cover Z(z) = z + 1/z, preimages of disks and lifts.

A disk U centered at infinity with -2 and 2 on its boundary lifts under Z to
a disk V centered at infinity. With g(1) = 2 the lifted Riemann map is
h = Zext^-1 o g, and rad(V) = rad(U) because Zext^-1(w) ~ w near infinity.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from .confmap import (RiemannMap, boundary_correspondence, invert_boundary, radial_limits,
                      sampled_disk)
from .geom import INF, PointedDisk, is_inf
from .maps import ConformalMap, DomainError, JoukowskiExteriorInverse, NumericError


class BranchError(DomainError):
    """Point strictly inside the slit (-2, 2) with no side information."""


class PreconditionError(ValueError):
    pass


def zhukovskii(zeta):
    """Z(zeta) = zeta + 1/zeta; infinity maps to infinity."""
    z = np.asarray(zeta, complex)
    if np.any(z == 0):
        raise DomainError("Z is undefined at 0")
    with np.errstate(invalid="ignore"):
        out = z + 1.0 / z
    return np.where(np.isinf(z), INF, out)


def zhukovskii_inverse_exterior(w, side=None):
    """Root of zeta^2 - w zeta + 1 = 0 with |zeta| >= 1.

    Points strictly inside (-2, 2) need ``side``: +1 (approached from the upper
    half-plane) or -1, scalar or per point.
    """
    w = np.asarray(w, complex)
    s = np.sqrt(w * w - 4.0)
    r1 = (w + s) / 2.0
    r2 = (w - s) / 2.0
    out = np.where(np.abs(r1) >= np.abs(r2), r1, r2)
    on_slit = (w.imag == 0) & (np.abs(w.real) < 2)
    if np.any(on_slit):
        if side is None:
            raise BranchError("point inside the slit (-2, 2) needs a side")
        sd = np.broadcast_to(np.asarray(side), w.shape)
        x = w.real
        up = (x + 1j * np.sqrt(np.maximum(4.0 - x * x, 0.0))) / 2.0
        out = np.where(on_slit, np.where(sd >= 0, up, np.conj(up)), out)
    return np.where(np.isinf(w), INF, out)


@dataclass
class LiftData:
    base: PointedDisk
    base_map: RiemannMap
    preimage: PointedDisk
    lifted_map: RiemannMap

    def lift_residual(self, n: int = 512, radii=(1.2, 2.0, 5.0)) -> float:
        """sup |Z(h(xi)) - g(xi)| over a sample of the exterior model."""
        a = np.arange(n) / n
        res = 0.0
        for r in radii:
            xi = r * np.exp(2j * np.pi * a)
            res = max(res, float(np.max(np.abs(zhukovskii(self.lifted_map(xi)) - self.base_map(xi)))))
        return res


def _on_boundary(d: PointedDisk, p: complex) -> bool:
    return bool(d.boundary.distance(np.array([p]))[0] < 1e-6 * max(1.0, d.boundary.diameter))


def zhukovskii_preimage(g: RiemannMap, n: int = 1024) -> LiftData:
    U = g.domain
    if not is_inf(U.center) or g.model != "exterior":
        raise PreconditionError("the base disk must be centered at infinity")
    for p in (2.0, -2.0):
        if not _on_boundary(U, p):
            raise PreconditionError(f"{p:+g} is not on the boundary")
    g1 = complex(radial_limits(g, np.array([0.0]))[0][0])
    if abs(g1 - 2.0) > 1e-6:
        raise PreconditionError("the base map must satisfy g(1) = 2")
    xs = np.linspace(-2, 2, 201)[1:-1]
    if np.any(U.inside(xs + 0j)):
        raise PreconditionError("the base disk meets the slit (-2, 2); no principal lift")
    chain = list(g.map.chain) + [JoukowskiExteriorInverse()]
    hmap = ConformalMap(chain, "exterior", "zhukovskii_preimage")
    # boundary of V from radial limits of h, which approach from inside and so carry the side
    a = np.arange(n) / n
    pts, conv, _ = radial_limits(RiemannMap(hmap, U, "exterior"), a)
    if not np.all(np.isfinite(pts)):
        raise NumericError("lifted boundary sample is not finite")
    V = sampled_disk(_dedupe(pts), INF, kind="zhukovskii_preimage")
    V = replace(V, marked_point=1.0 + 0j)
    h = RiemannMap(hmap, V, "exterior", g.normalization, g.marked_angle)
    return LiftData(U, g, V, h)


def _dedupe(pts):
    keep = [0]
    for i in range(1, len(pts)):
        if abs(pts[i] - pts[keep[-1]]) > 1e-12:
            keep.append(i)
    if abs(pts[keep[-1]] - pts[0]) <= 1e-12 and len(keep) > 1:
        keep.pop()
    return pts[keep]


@dataclass
class LiftedMap:
    """psi on sampled boundary points of V: points[i] -> images[i]."""

    angles: np.ndarray
    points: np.ndarray
    images: np.ndarray
    residual: float

    def fixes(self, q: complex, tol: float = 1e-6) -> bool:
        i = int(np.argmin(np.abs(self.points - q)))
        return abs(self.points[i] - q) < tol and abs(self.images[i] - q) < tol


def induced_circle_map(phi: Callable, g: RiemannMap, g_tilde: RiemannMap, angles):
    """phi° = g_tilde^-1 o phi o g on landing angles, via the closed-form inverse
    of g_tilde slightly inside the domain."""
    angles = np.asarray(angles, float)
    inner = g.at(angles, 1.0 - 1e-9)
    w = phi(inner)
    xi = g_tilde.inverse(w)
    return (np.angle(xi) / (2 * np.pi)) % 1.0


def zhukovskii_lift(phi: Callable, lift: LiftData, lift_tilde: LiftData, n: int = 1024,
                    circle_map: Optional[Callable] = None) -> LiftedMap:
    """Lift of a boundary map phi (fixing -2 and 2) through the double cover.

    ``phi`` acts on points of the plane near the boundary of U. The induced
    circle maps of phi and psi coincide, so psi = h_tilde o phi° o h^-1.
    """
    for p in (2.0, -2.0):
        if abs(complex(phi(np.array([p + 0j]))[0]) - p) > 1e-6:
            raise PreconditionError("phi must fix -2 and 2")
    a = np.arange(n) / n
    if circle_map is None:
        b = induced_circle_map(phi, lift.base_map, lift_tilde.base_map, a)
    else:
        b = np.asarray(circle_map(a), float) % 1.0
    q, _, _ = radial_limits(lift.lifted_map, a)
    img, _, _ = radial_limits(lift_tilde.lifted_map, b)
    base_pts, _, _ = radial_limits(lift.base_map, a)
    lhs = zhukovskii(img)
    rhs = phi(base_pts)
    res = float(np.max(np.abs(lhs - rhs)))
    return LiftedMap(a, q, img, res)


def _ray(g: RiemannMap, a: float, m: int = 512) -> np.ndarray:
    r = np.concatenate([np.linspace(0.02, 0.5, m // 2, endpoint=False),
                        1.0 - 2.0 ** -np.linspace(1.0, 30.0, m // 2)])
    return g.at(np.full(len(r), a), r)


def _crossings(path: np.ndarray, poly: np.ndarray) -> int:
    """Number of proper intersections between two polylines."""
    A, B = path[:-1], path[1:]
    C, D = poly[:-1], poly[1:]

    def cross(u, v):
        return u.real * v.imag - u.imag * v.real

    count = 0
    for a, b in zip(A, B):
        d1 = cross(b - a, C - a)
        d2 = cross(b - a, D - a)
        d3 = cross(D - C, a - C)
        d4 = cross(D - C, b - C)
        hit = (np.sign(d1) * np.sign(d2) < 0) & (np.sign(d3) * np.sign(d4) < 0)
        count += int(np.sum(hit))
    return count


def separates(g: RiemannMap, pair, points=(-2.0, 2.0), m: int = 512) -> bool:
    """Whether the two rays of ``pair`` (with their landing point) separate the
    two ``points``, by crossing parity along a path between them that is bumped
    around the landing point."""
    a_minus, a_plus = pair
    vals, conv, _ = radial_limits(g, np.array([a_minus, a_plus]))
    if not np.all(conv):
        raise NumericError("rays of the pair do not land")
    p = complex(vals.mean())
    lo, hi = complex(points[0]), complex(points[1])
    diam = max(1.0, g.domain.boundary.diameter)
    rho = 1e-3 * diam
    seg = np.linspace(lo, hi, 2049)
    d = hi - lo
    u = np.real((p - lo) * np.conj(d)) / abs(d) ** 2
    foot = lo + np.clip(u, 0, 1) * d
    if abs(p - foot) < rho and 0 < u < 1:
        e = d / abs(d)
        before = seg[np.real((seg - p) * np.conj(e)) < -rho]
        after = seg[np.real((seg - p) * np.conj(e)) > rho]
        th = np.linspace(np.pi, 0, 65)
        bump = p + rho * e * np.exp(1j * th)
        path = np.concatenate([before, bump, after])
    else:
        path = seg
    total = 0
    for a in (a_minus, a_plus):
        total += _crossings(path, _ray(g, a, m))
    return total % 2 == 1


def classify_lifted_access(pair, g: RiemannMap, points=(-2.0, 2.0)) -> str:
    if np.ndim(pair) == 0 or len(pair) != 2:
        raise ValueError("need a biaccessible angle pair")
    return "splits-to-two-uniaccessible" if separates(g, pair, points) else \
        "lifts-to-one-biaccessible"


def biaccessible_pairs(g: RiemannMap, n: int = 512, stride: int = 8):
    """Angle pairs landing at a common point, found by inverting sampled
    boundary points (every ``stride``-th sample)."""
    c = boundary_correspondence(g, n)
    pairs = []
    seen = []
    for i in range(0, n, stride):
        hits = invert_boundary(c, c.points[i])
        if len(hits) == 2:
            key = tuple(round(h[0], 6) for h in hits)
            if key not in seen:
                seen.append(key)
                pairs.append((hits[0][0], hits[1][0]))
    return pairs
