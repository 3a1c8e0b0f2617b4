"""Harmonic measure, its decomposition into one- and two-sided parts,
pushforwards, distances, Poisson extension and the static fitness test."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .confmap import BoundaryCorrespondence, RiemannMap, boundary_correspondence, radial_limits
from .geom import BoundaryCurve
from .maps import DomainError

MASS_TOL = 1e-12


@dataclass
class DiscreteMeasure:
    """Finite atomic measure on a boundary curve.

    ``params`` are arclength positions along the boundary measured from the
    start of its first piece (the marked point for builtin domains). Slit
    points are located on the side traversed first, so the parameter only
    depends on the point, never on the side it is approached from.
    """

    points: np.ndarray
    weights: np.ndarray
    boundary: BoundaryCurve
    tags: Optional[list] = None
    angles: Optional[np.ndarray] = None
    normalized: bool = True
    diagnostics: dict = field(default_factory=dict)
    params: Optional[np.ndarray] = None
    source: Optional[RiemannMap] = field(default=None, repr=False)

    def __post_init__(self):
        self.points = np.asarray(self.points, complex)
        self.weights = np.asarray(self.weights, float)
        if self.points.shape != self.weights.shape:
            raise ValueError("points and weights differ in length")
        if np.any(self.weights < 0):
            raise ValueError("negative weight")
        if self.normalized and abs(self.weights.sum() - 1.0) > MASS_TOL:
            raise ValueError(f"weights sum to {self.weights.sum()!r}, not 1")
        if self.params is None:
            if len(self.points):
                self.params, _ = self.boundary.locate(self.points)
            else:
                self.params = np.zeros(0)
        L = self.boundary.total_length
        self.params = np.asarray(self.params, float) % L

    def __len__(self):
        return len(self.points)

    @property
    def mass(self) -> float:
        return float(self.weights.sum())

    def order(self) -> np.ndarray:
        return np.argsort(self.params, kind="stable")

    def cumulative(self):
        """(sorted params, cumulative weights)."""
        o = self.order()
        return self.params[o], np.cumsum(self.weights[o])

    def cdf(self, x):
        p, c = self.cumulative()
        idx = np.searchsorted(p, np.asarray(x, float), side="right")
        return np.where(idx > 0, c[np.maximum(idx - 1, 0)], 0.0)

    def restrict(self, mask) -> "DiscreteMeasure":
        mask = np.asarray(mask, bool)
        return DiscreteMeasure(self.points[mask], self.weights[mask], self.boundary,
                               None if self.tags is None else [t for t, m in zip(self.tags, mask) if m],
                               None if self.angles is None else self.angles[mask],
                               normalized=False, params=self.params[mask], source=self.source)

    def mass_where(self, mask) -> float:
        return float(self.weights[np.asarray(mask, bool)].sum())

    def rows(self):
        """(param, point, weight, cumulative, tag) in parameter order."""
        o = self.order()
        cum = np.cumsum(self.weights[o])
        for k, i in enumerate(o):
            tag = "" if self.tags is None else self.tags[i]
            yield float(self.params[i]), complex(self.points[i]), float(self.weights[i]), \
                float(cum[k]), tag


def harmonic_measure(g: RiemannMap, n: int,
                     corr: Optional[BoundaryCorrespondence] = None) -> DiscreteMeasure:
    """Pushforward of n equal angle cells; atoms at the landing points of the
    cell midpoints (i + 1/2)/n."""
    if n < 8:
        raise ValueError("need n >= 8")
    c = corr if corr is not None else boundary_correspondence(g, n, offset=0.5 / n)
    pts = c.points.copy()
    w = np.full(len(pts), 1.0 / len(pts))
    conv = c.converged
    bad = np.nonzero(~conv)[0]
    diag = {"nonconvergent": int(len(bad)), "warnings": []}
    if len(bad):
        good = np.nonzero(conv)[0]
        if len(good) == 0:
            raise DomainError("no convergent landing angles")
        for i in bad:
            d = np.abs((c.angles[good] - c.angles[i] + 0.5) % 1.0 - 0.5)
            j = good[np.argmin(d)]
            w[j] += w[i]
            w[i] = 0.0
        if len(bad) > 0.01 * len(pts):
            diag["warnings"].append(f"{len(bad)} of {len(pts)} cells did not converge")
    keep = w > 0
    w = w[keep] / w[keep].sum()
    tags = [t for t, k in zip(c.tags, keep) if k]
    return DiscreteMeasure(pts[keep], w, g.domain.boundary, tags, c.angles[keep],
                           diagnostics=diag, source=g)


@dataclass
class MeasureDecomposition:
    alpha: DiscreteMeasure
    beta_minus: DiscreteMeasure
    beta_plus: DiscreteMeasure
    marked_point: Optional[complex]

    def total(self) -> np.ndarray:
        return self.alpha.weights + self.beta_minus.weights + self.beta_plus.weights


def decompose(mu: DiscreteMeasure, s: Optional[complex] = None) -> MeasureDecomposition:
    """Split by access tag. Parts keep every atom (zero weight off their support)
    so they add up atomwise."""
    if mu.tags is None:
        raise ValueError("measure carries no access tags")
    if s is not None and mu.source is not None:
        g1 = complex(mu.source.at(np.array([0.0]))[0])
        if abs(g1 - complex(s)) > 1e-6 * max(1.0, mu.boundary.diameter):
            raise ValueError("marked point is not g(1)")
    tags = np.array(mu.tags)
    parts = []
    for sel in (~np.isin(tags, ["bi-minus", "bi-plus"]), tags == "bi-minus", tags == "bi-plus"):
        parts.append(DiscreteMeasure(mu.points, np.where(sel, mu.weights, 0.0), mu.boundary,
                                     list(mu.tags), mu.angles, normalized=False,
                                     params=mu.params, source=mu.source))
    return MeasureDecomposition(*parts, marked_point=s)


def pushforward(mu: DiscreteMeasure, phi: Callable, target: Optional[BoundaryCurve] = None,
                tol: Optional[float] = None) -> DiscreteMeasure:
    """Move atoms by ``phi`` and keep the weights."""
    target = mu.boundary if target is None else target
    new = np.asarray(phi(mu.points), complex)
    bad = ~np.isfinite(new)
    if np.any(bad):
        i = int(np.nonzero(bad)[0][0])
        raise DomainError(f"map undefined at atom {i} ({mu.points[i]})")
    tol = 1e-6 * max(1.0, target.diameter) if tol is None else tol
    params, dist = target.locate(new)
    if np.any(dist > tol):
        i = int(np.argmax(dist))
        raise DomainError(f"atom {i} is mapped off the target boundary (distance {dist[i]:.3g})")
    return DiscreteMeasure(new, mu.weights.copy(), target, mu.tags, mu.angles,
                           normalized=mu.normalized, params=params)


def _same_boundary(a: BoundaryCurve, b: BoundaryCurve) -> bool:
    return a is b or a.describe() == b.describe()


def measure_distance(mu: DiscreteMeasure, nu: DiscreteMeasure, snap: float = 1e-9) -> float:
    """Sup distance between cumulative tables along the common parameterization.

    Atoms closer than ``snap`` times the boundary length count as one location,
    so rounding-level differences do not register as a full atom of distance.
    """
    if not _same_boundary(mu.boundary, nu.boundary):
        raise ValueError("measures live on different boundaries")
    grid = np.unique(np.concatenate([mu.params, nu.params]))
    if len(grid) == 0:
        return 0.0
    h = snap * mu.boundary.total_length
    right = np.abs(mu.cdf(grid + h) - nu.cdf(grid + h))
    left = np.abs(mu.cdf(grid - h) - nu.cdf(grid - h))
    return float(max(right.max(), left.max()))


def poisson_extend(samples, z):
    """Trapezoidal Poisson integral of equispaced samples f(e^{2 pi i k/N}) at z.

    The weights are divided by their sum, so constants extend exactly.
    """
    f = np.asarray(samples)
    z = np.asarray(z, complex)
    if np.any(np.abs(z) >= 1):
        raise DomainError("Poisson extension needs |z| < 1")
    u = np.exp(2j * np.pi * np.arange(len(f)) / len(f))
    zz = z.reshape(-1)
    kern = (1 - np.abs(zz[:, None]) ** 2) / np.abs(u[None, :] - zz[:, None]) ** 2
    out = (kern @ f) / kern.sum(axis=1)
    return out.reshape(z.shape)


def boundary_angles(c: BoundaryCorrespondence, q, tags=None, block: int = 256,
                    with_chord: bool = False):
    """Landing angles of boundary points by interpolation along correspondence
    chords. With ``tags``, a two-sided point only matches chords on its side.

    Returns (angles, distance to the matched chord) and, with ``with_chord``,
    the length of that chord.
    """
    q = np.asarray(q, complex)
    P = c.points
    A = c.angles
    T = np.array(c.tags)
    n = len(P)
    j1 = (np.arange(n) + 1) % n
    a0 = A
    da = (A[j1] - A) % 1.0
    d = P[j1] - P
    dd = np.where(np.abs(d) > 0, np.abs(d) ** 2, 1.0)
    out = np.empty(q.shape)
    dist = np.empty(q.shape)
    chord = np.empty(q.shape)
    qt = None if tags is None else np.asarray(tags)
    for s in range(0, len(q), block):
        qq = q[s:s + block]
        u = np.clip(np.real((qq[:, None] - P[None, :]) * np.conj(d)[None, :]) / dd[None, :], 0, 1)
        r = np.abs(qq[:, None] - (P[None, :] + u * d[None, :]))
        if qt is not None:
            for k, tg in enumerate(qt[s:s + block]):
                if tg in ("bi-minus", "bi-plus"):
                    ok = np.isin(T, [tg, "uni"]) & np.isin(T[j1], [tg, "uni"])
                    r[k, ~ok] = np.inf
        j = np.argmin(r, axis=1)
        rows = np.arange(len(qq))
        out[s:s + block] = (a0[j] + u[rows, j] * da[j]) % 1.0
        dist[s:s + block] = r[rows, j]
        chord[s:s + block] = np.abs(d[j])
    if with_chord:
        return out, dist, chord
    return out, dist


def circle_deviation(a, b) -> np.ndarray:
    """Circular distance between angle arrays, in turns."""
    return np.abs((np.asarray(b) - np.asarray(a) + 0.5) % 1.0 - 0.5)


@dataclass
class StaticFitnessReport:
    fit: bool
    alpha_ok: bool
    beta_minus_ok: bool
    beta_plus_ok: bool
    total_ok: bool
    deviation: float
    distances: dict
    consistent: bool

    def as_dict(self):
        return {"fit": self.fit, "alpha_ok": self.alpha_ok, "beta_minus_ok": self.beta_minus_ok,
                "beta_plus_ok": self.beta_plus_ok, "total_ok": self.total_ok,
                "deviation": self.deviation, "distances": dict(self.distances),
                "consistent": self.consistent}


def static_fitness_check(g: RiemannMap, g_tilde: RiemannMap, phi: Callable, n: int = 1024,
                         tol_measure: float = 0.02, tol_circle: float = 5e-3) -> StaticFitnessReport:
    """Compare phi_* alpha, phi_* beta-/+ with the target parts, and measure
    how far the induced circle map g_tilde^-1 o phi o g is from the identity."""
    om = harmonic_measure(g, n)
    om_t = harmonic_measure(g_tilde, n)
    dec = decompose(om)
    dec_t = decompose(om_t)
    tb = g_tilde.domain.boundary
    dist = {}
    for name in ("alpha", "beta_minus", "beta_plus"):
        pushed = pushforward(getattr(dec, name), phi, tb)
        dist[name] = measure_distance(pushed, getattr(dec_t, name))
    dist["total"] = measure_distance(pushforward(om, phi, tb), om_t)
    ct = boundary_correspondence(g_tilde, n)
    imgs = np.asarray(phi(om.points), complex)
    sigma, _ = boundary_angles(ct, imgs, om.tags)
    dev = float(circle_deviation(om.angles, sigma).max())
    ok = {k: v < tol_measure for k, v in dist.items()}
    fit = dev < tol_circle
    parts_ok = ok["alpha"] and ok["beta_minus"] and ok["beta_plus"]
    return StaticFitnessReport(fit, ok["alpha"], ok["beta_minus"], ok["beta_plus"], ok["total"],
                               dev, dist, parts_ok == fit)


def _slit_profile(g: RiemannMap, n: int):
    """Slit piece (base -> tip), preimage arc of the slit, and the harmonic mass
    of the slit as a function of the position s in [0, 1] from the base."""
    bd = g.domain.boundary
    slits = [p for p in bd.pieces if p.slit is not None and p.side == "plus"]
    if len(slits) != 1:
        raise ValueError("need a disk with exactly one slit")
    plus = slits[0]
    c = boundary_correspondence(g, n, offset=0.5 / n)
    om = harmonic_measure(g, n, corr=c)
    on_slit = np.isin(np.array(om.tags), ["bi-minus", "bi-plus"])
    if not np.any(on_slit):
        raise ValueError("no two-sided samples on the slit")
    # the slit's preimage arc contains angle 0 and every two-sided sample;
    # the base is a corner, so its angles are read off the samples (half a cell)
    signed = (om.angles[on_slit] + 0.5) % 1.0 - 0.5
    start = float(signed.min()) - 0.5 / n
    s, _ = plus.nearest(om.points[on_slit])
    o = np.argsort(s, kind="stable")
    cum = np.concatenate([[0.0], np.cumsum(om.weights[on_slit][o])])
    return plus, start % 1.0, np.concatenate([[0.0], s[o]]), cum, c


def slit_measure_matching(g: RiemannMap, g_tilde: RiemannMap, n: int = 8192) -> Callable:
    """Boundary homeomorphism between two single-slit disks that respects harmonic measure.

    On the slit, a point at harmonic mass m from the base goes to the point
    at mass m from the base of the target slit. Elsewhere it is
    g_tilde o R o g^-1 with R the rotation taking the start of the slit's
    preimage arc to that of the target; the arcs have the same length when
    the slit masses agree.
    """
    plus, xs, s, cum, c = _slit_profile(g, n)
    plus_t, xs_t, s_t, cum_t, _ = _slit_profile(g_tilde, n)
    shift = xs_t - xs
    bd = g.domain.boundary

    def phi(z):
        z = np.atleast_1d(np.asarray(z, complex))
        out = np.empty(z.shape, complex)
        idx, _, _ = bd.nearest(z)
        slit = np.array([bd.pieces[i].slit is not None for i in idx.ravel()]).reshape(z.shape)
        if np.any(slit):
            sz, _ = plus.nearest(z[slit])
            m = np.interp(sz, s, cum)
            out[slit] = plus_t.point(np.interp(m, cum_t, s_t))
        if np.any(~slit):
            a, _ = boundary_angles(c, z[~slit], ["uni"] * int(np.sum(~slit)))
            out[~slit], _, _ = radial_limits(g_tilde, (a + shift) % 1.0)
        return out

    return phi
