"""Riemann maps, conformal radius and boundary correspondence."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from .geom import INF, BoundaryCurve, PointedDisk, PolylinePiece, SegmentPiece, is_inf
from .maps import ConformalMap, Germ, Inversion, Mobius, NumericError, Rotation
from .zipper import ZipperInverse, build_zipper

TAGS = ("uni", "bi-minus", "bi-plus", "unknown")

K_MIN = 4
K_MAX = 40
RADIAL_TOL = 1e-7
# Radius used when a single near-boundary value is enough (bisection, probes).
EDGE_R = 1.0 - 2.0 ** -36


@dataclass
class RiemannMap:
    """Conformal map from the model domain onto a pointed disk.

    ``model`` is ``"disk"`` (base point 0) or ``"exterior"`` (base point
    infinity). ``marked_angle`` is the angle (turns) sent to the marked point,
    which is 0 under marked-point normalization.
    """

    map: ConformalMap
    domain: PointedDisk
    model: str = "disk"
    normalization: str = "derivative"
    marked_angle: Optional[float] = None
    newton_guess: Optional[object] = field(default=None, repr=False)

    def __post_init__(self):
        if self.model not in ("disk", "exterior"):
            raise ValueError("model must be 'disk' or 'exterior'")

    def __call__(self, z):
        return self.map(z)

    def deriv(self, z):
        return self.map.deriv(z)

    @property
    def base_germ(self) -> Germ:
        return Germ(0.0 + 0j, 1.0 + 0j) if self.model == "disk" else Germ(INF, 1.0 + 0j)

    def germ(self) -> Germ:
        return self.map.germ(self.base_germ)

    @property
    def conformal_radius(self) -> float:
        # rotations only change the phase, skip them so the radius is exact under renormalization
        g = self.base_germ
        for p in self.map.chain:
            if getattr(p, "is_rotation", False):
                continue
            g = p.germ(g)
        return float(abs(g.coef))

    def model_point(self, a, r=1.0):
        a = np.asarray(a, float)
        u = np.exp(2j * np.pi * a)
        return r * u if self.model == "disk" else u / r

    def at(self, a, r=EDGE_R):
        """g evaluated on the radius (ray) at angle ``a`` with radial parameter ``r``."""
        return self.map(self.model_point(a, r))

    def inverse(self, w):
        """Preimage of interior points in the model domain."""
        w = np.asarray(w, complex)
        if self.map.has_inverse:
            return self.map.inverse(w)
        if self.newton_guess is None:
            raise NumericError("no inverse available for this map")
        return self.map.inverse(w, guess=self.newton_guess(w))

    def rotated(self, turns: float) -> "RiemannMap":
        """Precompose with the model rotation by ``turns``."""
        rot = Rotation(turns)
        rot.is_rotation = True
        chain = [rot] + list(self.map.chain)
        cm = ConformalMap(chain, self.map.domain_tag, self.map.range_tag)
        ma = None if self.marked_angle is None else (self.marked_angle - turns) % 1.0
        guess = self.newton_guess
        if guess is not None:
            shift = np.exp(-2j * np.pi * turns)
            guess = (lambda w, _g=guess, _s=shift: _g(w) * _s)
        return replace(self, map=cm, marked_angle=ma, newton_guess=guess)


def conformal_radius(g: RiemannMap) -> float:
    return g.conformal_radius


def eval_map(f, z):
    return f(z)


@dataclass
class BoundaryCorrespondence:
    angles: np.ndarray
    points: np.ndarray
    converged: np.ndarray
    tags: list
    source: RiemannMap
    probes: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.angles)

    def rows(self):
        for i in range(len(self.angles)):
            yield float(self.angles[i]), complex(self.points[i]), bool(self.converged[i]), self.tags[i]


def radial_limits(g: RiemannMap, angles, k_min: int = K_MIN, k_max: int = K_MAX,
                  tol: float = RADIAL_TOL):
    """Radial limits g(a) along r_k = 1 - 2^-k with a Richardson correction.

    Returns (values, converged flags, probe points at r = 1 - 2^-12).
    """
    angles = np.asarray(angles, float)
    n = len(angles)
    hist = np.full((3, n), np.nan + 0j)
    out = np.full(n, np.nan + 0j)
    done = np.zeros(n, bool)
    probes = g.at(angles, 1.0 - 2.0 ** -12)
    for k in range(k_min, k_max + 1):
        act = ~done
        if not np.any(act):
            break
        v = g.at(angles[act], 1.0 - 2.0 ** -k)
        hist[0, act], hist[1, act], hist[2, act] = hist[1, act], hist[2, act], v
        d1 = np.abs(hist[2] - hist[1])
        d2 = np.abs(hist[1] - hist[0])
        ok = act & (d1 < tol) & (d2 < tol)
        out[ok] = 2 * hist[2, ok] - hist[1, ok]
        done |= ok
    rest = ~done
    out[rest] = hist[2, rest]
    return out, done, probes


def _slit_groups(boundary: BoundaryCurve) -> dict:
    groups = {}
    for i, p in enumerate(boundary.pieces):
        if p.slit is not None:
            groups.setdefault(p.slit, []).append(i)
    return groups


def assign_tags(g: RiemannMap, angles, points, converged, probes) -> list:
    """Access tags: sides of each slit are told apart by the probe point just
    inside the domain; the side met first counterclockwise from the marked
    angle is minus."""
    n = len(angles)
    tags = ["uni"] * n
    bd = g.domain.boundary
    groups = _slit_groups(bd)
    if not groups:
        return tags
    tol = 1e-6 * max(1.0, bd.diameter)
    ref = 0.0 if g.marked_angle is None else g.marked_angle
    rel = (np.asarray(angles) - ref) % 1.0
    for slit, idx in groups.items():
        minus = [i for i in idx if bd.pieces[i].side != "plus"] or idx
        piece = bd.pieces[minus[0]]
        _, d = piece.nearest(points)
        on = d < tol
        # endpoints of the slit are not two-sided
        ends = np.array([complex(piece.point(0.0)), complex(piece.point(1.0))])
        tip_like = np.min(np.abs(points[:, None] - ends[None, :]), axis=1) < tol
        sel = np.nonzero(on & ~tip_like)[0]
        if len(sel) == 0:
            continue
        side = piece.physical_side(probes[sel])
        means = {}
        for s in (1, -1):
            m = sel[side == s]
            means[s] = rel[m].mean() if len(m) else np.inf
        minus_side = 1 if means[1] <= means[-1] else -1
        for j, s in zip(sel, side):
            if not converged[j]:
                tags[j] = "unknown"
            else:
                tags[j] = "bi-minus" if s == minus_side else "bi-plus"
    return tags


def boundary_correspondence(g: RiemannMap, n: int, offset: float = 0.0) -> BoundaryCorrespondence:
    if n < 8:
        raise ValueError("need n >= 8")
    angles = (np.arange(n) / n + offset) % 1.0
    angles.sort()
    vals, conv, probes = radial_limits(g, angles)
    tags = assign_tags(g, angles, vals, conv, probes)
    return BoundaryCorrespondence(angles, vals, conv, tags, g, probes)


def invert_boundary(c: BoundaryCorrespondence, p: complex, tol: Optional[float] = None):
    """Angles whose radial limit is ``p``, as a list of (turns, tag)."""
    g = c.source
    p = complex(p)
    diam = max(1.0, g.domain.boundary.diameter)
    tol = 1e-6 * diam if tol is None else tol
    a = c.angles
    P = c.points
    n = len(a)
    a_next = np.append(a[1:], a[0] + 1.0)
    P_next = np.roll(P, -1)
    d = P_next - P
    seg = np.abs(d)
    u = np.clip(np.real((p - P) * np.conj(d)) / np.where(seg > 0, seg ** 2, 1.0), 0.0, 1.0)
    dist = np.abs(p - (P + u * d))
    cand = np.nonzero(dist < 0.25 * seg + tol)[0]
    found = []
    for i in cand:
        lo, hi = float(a[i]), float(a_next[i])
        dir_ = d[i] if seg[i] > 0 else 1.0

        def s(t):
            return float(np.real((complex(g.at(np.array([t]))[0]) - p) * np.conj(dir_)))

        slo, shi = s(lo), s(hi)
        if slo > 0 or shi < 0:
            # no bracket; keep an endpoint if it already matches
            for t in (lo, hi):
                if abs(complex(g.at(np.array([t]))[0]) - p) < tol:
                    found.append(t % 1.0)
            continue
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if s(mid) <= 0:
                lo = mid
            else:
                hi = mid
            if hi - lo < 1e-15:
                break
        t = 0.5 * (lo + hi)
        if abs(complex(g.at(np.array([t]))[0]) - p) < max(tol, 1e-6 * diam):
            found.append(t % 1.0)
    if not found:
        raise LookupError(f"boundary point {p} not found in the correspondence")
    found.sort()
    merged = []
    res = 2.0 / n
    for t in found:
        if merged and min(abs(t - merged[-1][-1]), 1 - abs(t - merged[-1][-1])) < res:
            merged[-1].append(t)
        else:
            merged.append([t])
    if len(merged) > 1 and min(abs(merged[0][0] - merged[-1][-1]),
                               1 - abs(merged[0][0] - merged[-1][-1])) < res:
        merged[0] = merged.pop() + merged[0]
    angles = [_circ_mean(m) for m in merged]
    if len(angles) == 1:
        return [(angles[0], "uni")]
    ref = 0.0 if g.marked_angle is None else g.marked_angle
    angles.sort(key=lambda t: (t - ref) % 1.0)
    tags = ["bi-minus", "bi-plus"] if len(angles) == 2 else ["unknown"] * len(angles)
    return list(zip(angles, tags))


def _circ_mean(ts):
    z = np.mean(np.exp(2j * np.pi * np.asarray(ts)))
    return float((np.angle(z) / (2 * np.pi)) % 1.0)


def normalize(f: RiemannMap, constraint="derivative", marked_point: Optional[complex] = None,
              n: int = 512) -> RiemannMap:
    """Post-compose with the model rotation achieving the constraint."""
    if constraint == "derivative":
        germ = f.germ()
        phase = np.angle(germ.coef) / (2 * np.pi)
        # disk: g(zeta) ~ p + d zeta; exterior: g ~ k zeta. Rotating by -phase makes the coefficient positive.
        out = f.rotated(-phase)
        out.normalization = "derivative"
        return out
    if constraint == "marked":
        s = f.domain.marked_point if marked_point is None else complex(marked_point)
        if s is None:
            raise ValueError("marked-point normalization needs a marked point")
        corr = boundary_correspondence(f, n)
        hits = invert_boundary(corr, s)
        if len(hits) != 1:
            raise ValueError("marked point must be uniaccessible")
        a_s = hits[0][0]
        out = f.rotated(a_s)
        out.marked_angle = 0.0
        out.normalization = "marked"
        if marked_point is not None:
            out.domain = replace(f.domain, marked_point=complex(marked_point))
        return out
    raise ValueError(f"unknown constraint {constraint!r}")


def sampled_disk(points, center, layout: str = "jordan", kind: str = "sampled",
                 params: Optional[dict] = None) -> PointedDisk:
    """PointedDisk whose boundary is the closed polyline through ``points``."""
    pts = np.asarray(points, complex)
    if layout == "slit":
        tip, base = pts[0], pts[1]
        loop = pts[1:]
        pieces = [SegmentPiece(tip, base, slit=0, side="minus"),
                  PolylinePiece(loop),
                  SegmentPiece(base, tip, slit=0, side="plus")]
    else:
        pieces = [PolylinePiece(np.append(pts, pts[0]))]
    bc = BoundaryCurve(pieces)
    return PointedDisk(bc, center, marked_point=pts[0], kind=kind, params=params or {})


def build_zipper_map(points, center, layout: str = "jordan", normalize: str = "derivative",
                     domain: Optional[PointedDisk] = None) -> RiemannMap:
    """Riemann map of the domain bounded by ``points`` (geodesic zipper).

    For the ``marked`` normalization the first point is sent to angle 0.
    """
    center = complex(center)
    data = build_zipper(points, center, layout=layout, normalize=normalize)
    prim = ZipperInverse(data)
    if is_inf(center):
        chain = [Inversion(), prim]
        model = "exterior"
    else:
        chain = [prim]
        model = "disk"
    cm = ConformalMap(chain, model, "sampled")
    if domain is None:
        domain = sampled_disk(points, center, layout)
    return RiemannMap(cm, domain, model, normalize, 0.0 if normalize == "marked" else None)
