"""Circle and boundary-curve primitives.

Angles on the unit circle are measured in turns, so the normalized Lebesgue
measure of an arc is literally its length. Boundary curves are ordered lists
of primitive pieces (segments, circular arcs, truncated Fourier curves); slit
pieces are stored twice, once per side.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

INF = complex("inf")

ANGLE_TOL = 1e-9
GEOM_TOL = 1e-9


def is_inf(z) -> bool:
    return isinstance(z, (complex, float, int, np.number)) and cmath.isinf(complex(z))


@dataclass(frozen=True)
class Tolerances:
    """Per-call-chain tolerance context."""

    angle: float = ANGLE_TOL
    geom: float = GEOM_TOL


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True, eq=False)
class Angle:
    """A point exp(2 pi i turns) on the unit circle."""

    turns: float
    tol: float = ANGLE_TOL

    def __post_init__(self):
        object.__setattr__(self, "turns", float(self.turns) % 1.0)

    def __eq__(self, other):
        if not isinstance(other, Angle):
            return NotImplemented
        d = abs(self.turns - other.turns) % 1.0
        return min(d, 1.0 - d) < self.tol

    __hash__ = None

    @property
    def point(self) -> complex:
        return cmath.exp(2j * math.pi * self.turns)

    def __float__(self):
        return self.turns


def _turns(a) -> float:
    return a.turns if isinstance(a, Angle) else float(a) % 1.0


@dataclass(frozen=True)
class ArcInterval:
    """Counterclockwise arc from ``start`` to ``end``."""

    start: Angle
    end: Angle
    closed: bool = True
    full: bool = False

    @classmethod
    def from_turns(cls, a: float, b: float, closed: bool = True, full: bool = False):
        return cls(Angle(a), Angle(b), closed, full)

    def complement(self) -> "ArcInterval":
        return ArcInterval(self.end, self.start, not self.closed, False)


def arc_length(arc: ArcInterval) -> float:
    if arc.full:
        return 1.0
    return (arc.end.turns - arc.start.turns) % 1.0


def arc_contains(arc: ArcInterval, a, tol: float = ANGLE_TOL) -> bool:
    if arc.full:
        return True
    t = _turns(a)
    length = arc_length(arc)
    off = (t - arc.start.turns) % 1.0
    if off > 1.0 - tol:
        off -= 1.0
    if arc.closed:
        return -tol <= off <= length + tol
    return tol < off < length - tol


def cyclic_order(a, b, c, tol: float = ANGLE_TOL) -> bool:
    """True iff going counterclockwise from ``a`` one meets ``b`` before ``c``."""
    ta, tb, tc = _turns(a), _turns(b), _turns(c)
    for x, y in ((ta, tb), (tb, tc), (ta, tc)):
        d = abs(x - y) % 1.0
        if min(d, 1.0 - d) < tol:
            raise ValueError("cyclic_order needs three distinct angles")
    return (tb - ta) % 1.0 < (tc - ta) % 1.0


# --------------------------------------------------------------------------
# boundary pieces


class Piece:
    """A boundary piece parameterized by s in [0, 1].

    ``slit`` is an integer id shared by the two sides of a slit, ``side`` is
    ``"minus"`` for the side visited first from the marked point and
    ``"plus"`` for the other one.
    """

    slit: Optional[int] = None
    side: Optional[str] = None

    def point(self, s):
        raise NotImplementedError

    def deriv(self, s):
        raise NotImplementedError

    @property
    def length(self) -> float:
        raise NotImplementedError

    def arclength(self, s):
        return np.asarray(s, float) * self.length

    def nearest(self, z):
        """Return (s, distance) of the nearest point of the piece."""
        raise NotImplementedError

    def distance(self, z):
        return self.nearest(z)[1]

    def physical_side(self, z):
        """+1 if ``z`` lies to the left of the piece direction, -1 otherwise."""
        s, _ = self.nearest(z)
        p = self.point(s)
        t = self.deriv(s)
        return np.where(np.imag((np.asarray(z) - p) * np.conj(t)) >= 0, 1, -1)

    def reversed(self) -> "Piece":
        raise NotImplementedError

    def scaled(self, lam: complex) -> "Piece":
        """Image under z -> lam z."""
        raise NotImplementedError

    def sample(self, m: int) -> np.ndarray:
        return self.point(np.linspace(0.0, 1.0, m))

    def describe(self) -> dict:
        raise NotImplementedError


@dataclass(eq=False)
class SegmentPiece(Piece):
    a: complex
    b: complex
    slit: Optional[int] = None
    side: Optional[str] = None

    def point(self, s):
        return self.a + (self.b - self.a) * np.asarray(s, float)

    def deriv(self, s):
        return np.full(np.shape(s), self.b - self.a, dtype=complex)

    @property
    def length(self):
        return abs(self.b - self.a)

    def nearest(self, z):
        z = np.asarray(z, complex)
        d = self.b - self.a
        s = np.clip(np.real((z - self.a) * np.conj(d)) / abs(d) ** 2, 0.0, 1.0)
        return s, np.abs(z - self.point(s))

    def reversed(self):
        return SegmentPiece(self.b, self.a, self.slit, self.side)

    def scaled(self, lam):
        return SegmentPiece(lam * self.a, lam * self.b, self.slit, self.side)

    def describe(self):
        return {"type": "segment", "a": [self.a.real, self.a.imag],
                "b": [self.b.real, self.b.imag], "slit": self.slit, "side": self.side}


@dataclass(eq=False)
class ArcPiece(Piece):
    """Arc of the circle |z - center| = radius, from angle ``start`` (turns)
    sweeping ``span`` turns (negative span runs clockwise)."""

    center: complex
    radius: float
    start: float
    span: float
    slit: Optional[int] = None
    side: Optional[str] = None

    def point(self, s):
        th = 2 * np.pi * (self.start + self.span * np.asarray(s, float))
        return self.center + self.radius * np.exp(1j * th)

    def deriv(self, s):
        th = 2 * np.pi * (self.start + self.span * np.asarray(s, float))
        return 2j * np.pi * self.span * self.radius * np.exp(1j * th)

    @property
    def length(self):
        return 2 * np.pi * self.radius * abs(self.span)

    def nearest(self, z):
        z = np.asarray(z, complex)
        w = z - self.center
        th = np.angle(w) / (2 * np.pi)
        s = ((th - self.start) * np.sign(self.span)) % 1.0 / abs(self.span)
        if abs(self.span) >= 1.0:
            s = np.where(np.abs(w) == 0, 0.0, s % (1.0 / abs(self.span)))
        inside = s <= 1.0
        d_on = np.abs(np.abs(w) - self.radius)
        p0, p1 = self.point(0.0), self.point(1.0)
        d0, d1 = np.abs(z - p0), np.abs(z - p1)
        s_end = np.where(d0 <= d1, 0.0, 1.0)
        s_out = np.where(inside, np.minimum(s, 1.0), s_end)
        dist = np.where(inside, d_on, np.minimum(d0, d1))
        return s_out, dist

    def reversed(self):
        return ArcPiece(self.center, self.radius, self.start + self.span, -self.span,
                        self.slit, self.side)

    def scaled(self, lam):
        lam = complex(lam)
        return ArcPiece(lam * self.center, abs(lam) * self.radius,
                        self.start + cmath.phase(lam) / (2 * math.pi), self.span,
                        self.slit, self.side)

    def describe(self):
        return {"type": "arc", "center": [self.center.real, self.center.imag],
                "radius": self.radius, "start": self.start, "span": self.span,
                "slit": self.slit, "side": self.side}


@dataclass(eq=False)
class FourierPiece(Piece):
    """Curve z(u) = sum_k c_k exp(2 pi i k u) for u in [u0, u1] (turns).

    Nearest points use a coarse sample followed by a few Newton steps.
    """

    coeffs: dict
    u0: float = 0.0
    u1: float = 1.0
    coarse: int = 256
    slit: Optional[int] = None
    side: Optional[str] = None
    _tree: object = field(default=None, repr=False)
    _arclen: object = field(default=None, repr=False)

    def _u(self, s):
        return self.u0 + (self.u1 - self.u0) * np.asarray(s, float)

    def point(self, s):
        u = self._u(s)
        out = np.zeros(np.shape(u), complex)
        for k, c in self.coeffs.items():
            out = out + c * np.exp(2j * np.pi * k * u)
        return out

    def deriv(self, s):
        u = self._u(s)
        out = np.zeros(np.shape(u), complex)
        for k, c in self.coeffs.items():
            out = out + c * 2j * np.pi * k * np.exp(2j * np.pi * k * u)
        return out * (self.u1 - self.u0)

    def _deriv2(self, s):
        u = self._u(s)
        out = np.zeros(np.shape(u), complex)
        for k, c in self.coeffs.items():
            out = out - c * (2 * np.pi * k) ** 2 * np.exp(2j * np.pi * k * u)
        return out * (self.u1 - self.u0) ** 2

    def _table(self):
        if self._arclen is None:
            s = np.linspace(0.0, 1.0, 16 * self.coarse + 1)
            speed = np.abs(self.deriv(s))
            cum = np.concatenate([[0.0], np.cumsum((speed[1:] + speed[:-1]) / 2 * np.diff(s))])
            self._arclen = (s, cum)
        return self._arclen

    @property
    def length(self):
        return float(self._table()[1][-1])

    def arclength(self, s):
        grid, cum = self._table()
        return np.interp(s, grid, cum)

    def nearest(self, z):
        z = np.asarray(z, complex)
        if self._tree is None:
            self._sgrid = np.linspace(0.0, 1.0, 4 * self.coarse + 1)
            pts = self.point(self._sgrid)
            self._tree = cKDTree(np.column_stack([pts.real, pts.imag]))
        flat = z.reshape(-1)
        _, idx = self._tree.query(np.column_stack([flat.real, flat.imag]))
        s = self._sgrid[idx]
        for _ in range(4):
            p, dp, ddp = self.point(s), self.deriv(s), self._deriv2(s)
            f1 = np.real((p - flat) * np.conj(dp))
            f2 = np.abs(dp) ** 2 + np.real((p - flat) * np.conj(ddp))
            step = np.where(f2 > 0, f1 / np.where(f2 > 0, f2, 1.0), 0.0)
            s = np.clip(s - step, 0.0, 1.0)
        d = np.abs(flat - self.point(s))
        return s.reshape(z.shape), d.reshape(z.shape)

    def reversed(self):
        return FourierPiece(dict(self.coeffs), self.u1, self.u0, self.coarse, self.slit, self.side)

    def scaled(self, lam):
        return FourierPiece({k: lam * c for k, c in self.coeffs.items()}, self.u0, self.u1,
                            self.coarse, self.slit, self.side)

    def describe(self):
        return {"type": "fourier", "coeffs": [[k, c.real, c.imag] for k, c in
                                              sorted(self.coeffs.items())],
                "u0": self.u0, "u1": self.u1, "slit": self.slit, "side": self.side}


@dataclass(eq=False)
class PolylinePiece(Piece):
    """Piecewise linear curve through ``points`` (used for sampled boundaries)."""

    points: np.ndarray
    slit: Optional[int] = None
    side: Optional[str] = None

    def __post_init__(self):
        self.points = np.asarray(self.points, complex)
        seg = np.abs(np.diff(self.points))
        self._cum = np.concatenate([[0.0], np.cumsum(seg)])
        mid = (self.points[1:] + self.points[:-1]) / 2
        self._tree = cKDTree(np.column_stack([mid.real, mid.imag]))
        self._halfmax = seg.max() / 2 if len(seg) else 0.0

    @property
    def length(self):
        return float(self._cum[-1])

    def point(self, s):
        t = np.asarray(s, float) * self.length
        re = np.interp(t, self._cum, self.points.real)
        im = np.interp(t, self._cum, self.points.imag)
        return re + 1j * im

    def deriv(self, s):
        t = np.asarray(s, float) * self.length
        k = np.clip(np.searchsorted(self._cum, t, side="right") - 1, 0, len(self.points) - 2)
        d = self.points[k + 1] - self.points[k]
        return d / np.maximum(np.abs(d), 1e-300) * self.length

    def nearest(self, z):
        z = np.asarray(z, complex)
        flat = z.reshape(-1)
        kk = min(8, len(self.points) - 1)
        _, idx = self._tree.query(np.column_stack([flat.real, flat.imag]), k=kk)
        idx = np.atleast_2d(idx).reshape(len(flat), kk)
        a, b = self.points[idx], self.points[idx + 1]
        d = b - a
        dd = np.where(np.abs(d) > 0, np.abs(d) ** 2, 1.0)
        u = np.clip(np.real((flat[:, None] - a) * np.conj(d)) / dd, 0.0, 1.0)
        dist = np.abs(flat[:, None] - (a + u * d))
        j = np.argmin(dist, axis=1)
        rows = np.arange(len(flat))
        seg = idx[rows, j]
        t = self._cum[seg] + u[rows, j] * np.abs(d[rows, j])
        s = t / self.length
        return s.reshape(z.shape), dist[rows, j].reshape(z.shape)

    def reversed(self):
        return PolylinePiece(self.points[::-1].copy(), self.slit, self.side)

    def scaled(self, lam):
        return PolylinePiece(lam * self.points, self.slit, self.side)

    def describe(self):
        return {"type": "polyline", "points": [[p.real, p.imag] for p in self.points],
                "slit": self.slit, "side": self.side}


@dataclass(eq=False)
class BoundaryCurve:
    """Closed chain of pieces listed in traversal order from the marked point."""

    pieces: list
    domain_on_left: bool = True
    tol: float = GEOM_TOL

    def __post_init__(self):
        self.pieces = list(self.pieces)
        for p, q in zip(self.pieces, self.pieces[1:] + self.pieces[:1]):
            gap = abs(complex(p.point(1.0)) - complex(q.point(0.0)))
            scale = max(1.0, self.diameter)
            if gap > 1e-6 * scale:
                raise ValueError(f"boundary pieces do not chain up (gap {gap:.3g})")
        lengths = np.array([p.length for p in self.pieces])
        self._offsets = np.concatenate([[0.0], np.cumsum(lengths)])

    @property
    def diameter(self) -> float:
        pts = np.concatenate([p.sample(65) for p in self.pieces])
        return float(np.max(np.abs(pts[:, None] - pts[None, :])))

    @property
    def total_length(self) -> float:
        return float(self._offsets[-1])

    @property
    def slit_ids(self) -> list:
        return sorted({p.slit for p in self.pieces if p.slit is not None})

    def samples(self, per_piece: int = 64) -> np.ndarray:
        return np.concatenate([p.sample(per_piece) for p in self.pieces])

    def nearest(self, z, pieces: Optional[Sequence[int]] = None):
        """Return (piece index, s, distance) arrays for the nearest boundary points."""
        z = np.asarray(z, complex)
        idx = range(len(self.pieces)) if pieces is None else pieces
        best_d = np.full(z.shape, np.inf)
        best_i = np.zeros(z.shape, int)
        best_s = np.zeros(z.shape)
        for i in idx:
            s, d = self.pieces[i].nearest(z)
            better = d < best_d
            best_d = np.where(better, d, best_d)
            best_i = np.where(better, i, best_i)
            best_s = np.where(better, s, best_s)
        return best_i, best_s, best_d

    def distance(self, z):
        return self.nearest(z)[2]

    def point_set_pieces(self) -> list:
        """Piece indices that carry the point-set parameterization (plus sides dropped)."""
        return [i for i, p in enumerate(self.pieces) if p.side != "plus"]

    def param(self, piece_index, s):
        piece_index = np.asarray(piece_index)
        s = np.asarray(s, float)
        out = np.zeros(np.broadcast(piece_index, s).shape)
        for i, p in enumerate(self.pieces):
            m = piece_index == i
            if np.any(m):
                out = np.where(m, self._offsets[i] + p.arclength(s), out)
        return out

    def locate(self, z):
        """Cumulative-arclength parameter of boundary points (point-set convention:
        a slit point is located on the side visited first)."""
        i, s, d = self.nearest(z, self.point_set_pieces())
        return self.param(i, s), d

    def describe(self) -> dict:
        return {"pieces": [p.describe() for p in self.pieces],
                "domain_on_left": self.domain_on_left}


def boundary_distance(disk: "PointedDisk", z) -> np.ndarray:
    return disk.boundary.distance(z)


def _winding(poly: np.ndarray, z: np.ndarray) -> np.ndarray:
    d = poly[None, :] - z.reshape(-1, 1)
    ang = np.angle(d[:, 1:] / d[:, :-1])
    return np.rint(ang.sum(axis=1) / (2 * np.pi)).reshape(z.shape)


@dataclass(eq=False)
class PointedDisk:
    """A disk in the sphere with a marked center (finite or ``INF``)."""

    boundary: BoundaryCurve
    center: complex
    marked_point: Optional[complex] = None
    kind: str = "sampled"
    params: dict = field(default_factory=dict)
    inside_fn: Optional[Callable] = field(default=None, repr=False)

    def __post_init__(self):
        self.center = complex(self.center)
        if not self.center_is_inf:
            if not bool(np.all(self.inside(self.center))):
                raise ValueError("center must lie inside the domain")
            if self.boundary.distance(self.center) <= self.boundary.tol:
                raise ValueError("center lies on the boundary")
        if self.marked_point is not None:
            s = complex(self.marked_point)
            i, _, d = self.boundary.nearest(s)
            if d > 1e-6 * max(1.0, self.boundary.diameter):
                raise ValueError("marked point is not on the boundary")
            self.marked_point = s

    @property
    def center_is_inf(self) -> bool:
        return cmath.isinf(self.center)

    def inside(self, z):
        z = np.asarray(z, complex)
        if self.inside_fn is not None:
            return self.inside_fn(z)
        poly = self.boundary.samples(256)
        poly = np.append(poly, poly[0])
        w = _winding(poly, np.atleast_1d(z)).reshape(z.shape)
        on = self.boundary.distance(z) <= self.boundary.tol
        inner = w != 0
        return (~inner if self.center_is_inf else inner) & ~on

    def anchor(self) -> complex:
        """Finite point used to conjugate an infinite center: bounding-box centroid."""
        pts = self.boundary.samples(64)
        return complex((pts.real.min() + pts.real.max()) / 2,
                       (pts.imag.min() + pts.imag.max()) / 2)

    def finite_center_distance(self) -> float:
        """Distance from the center to the boundary in the Mobius-normalized
        picture w = 1/(z - anchor) when the center is infinite."""
        if not self.center_is_inf:
            return float(self.boundary.distance(self.center))
        pts = self.boundary.samples(256)
        return float(1.0 / np.max(np.abs(pts - self.anchor())))


def scaled_disk(disk: PointedDisk, lam: complex) -> PointedDisk:
    """Image of a pointed disk under the dilation z -> lam z."""
    lam = complex(lam)
    if lam == 0:
        raise ValueError("dilation factor must be nonzero")
    bd = disk.boundary
    nb = BoundaryCurve([p.scaled(lam) for p in bd.pieces], bd.domain_on_left, bd.tol)
    fn = None
    if disk.inside_fn is not None:
        fn = (lambda z, _f=disk.inside_fn: _f(np.asarray(z, complex) / lam))
    center = disk.center if disk.center_is_inf else lam * disk.center
    mp = None if disk.marked_point is None else lam * disk.marked_point
    return PointedDisk(nb, center, mp, disk.kind, dict(disk.params, scale=lam), fn)
