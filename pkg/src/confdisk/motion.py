"""Holomorphic motions of disk boundaries and the harness that evaluates the
four computable characterizations of holomorphically varying Riemann maps.

Conditions checked per parameter t:
  iii  the induced circle map g_t^-1 o phi_t o g_0 is the identity
  iv   t -> rho_{theta,t}(z) is holomorphic (intrinsic rotations)
  v    phi_t pushes harmonic measure of U_0 to that of U_t
  vi   t -> log rad(U_t, c_t) is harmonic
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .confmap import RiemannMap, boundary_correspondence
from .domains import (joukowski_exterior, radial_slit_exterior, segment_slit_exterior, unit_disk,
                      ellipse_interior)
from .geom import INF, BoundaryCurve, FourierPiece, PointedDisk, scaled_disk
from .maps import Affine, ConformalMap, DomainError, Laurent, NumericError, Polynomial
from .measure import (boundary_angles, circle_deviation, harmonic_measure, measure_distance,
                      pushforward)

GOLDEN = 0.6180339887498949
TAU = {"iii": 5e-3, "iv": 1e-5, "v": 1e-2, "vi": 1e-2}
CONDITIONS = ("iii", "iv", "v", "vi")
KINDS = ("affine_stretch", "joukowski", "trivial_chain", "slit_grow", "rescaled")


class PreconditionError(ValueError):
    pass


def _poly(coeffs, t):
    """Polynomial in t with coefficients listed from degree 0 up."""
    return complex(np.polyval(np.asarray(coeffs, complex)[::-1], t)) if len(coeffs) else 0j


def default_t_grid(radii=(0.25, 0.5, 0.75), m: int = 16) -> np.ndarray:
    """Origin plus ``m`` equally spaced angles on each circle."""
    ang = np.exp(2j * np.pi * np.arange(m) / m)
    return np.concatenate([[0j]] + [r * ang for r in radii])


@dataclass
class MotionFamily:
    """A holomorphic motion phi_t of the boundary of a pointed disk, t in the unit disk.

    kinds and parameters:
      affine_stretch  z + t conj(z) on the unit circle, center 0 (zipper maps)
      joukowski       z + t/z on the unit circle, center infinity
      trivial_chain   model "disk": G_t(w) = sum_k P_k(t) w^k;
                      model "exterior": G_t(w) = a(t) w + b(t)/w;
                      coefficients given as polynomials in t (lists, degree 0 first);
                      ``scale: "exp"`` multiplies G_t by e^t. phi_t = G_t o G_0^-1.
      slit_grow       unit circle fixed, slit [1, p(0)] stretched onto [1, p(t)], default p = 3 + 2t
      rescaled        another motion followed by z -> exp(-f(t)) z
    """

    kind: str
    params: dict = field(default_factory=dict)
    n: int = 512
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown motion kind {self.kind!r}")
        if self.kind == "trivial_chain":
            model = self.params.get("model", "disk")
            if model not in ("disk", "exterior"):
                raise ValueError("trivial_chain model must be 'disk' or 'exterior'")
            if model == "exterior" and len(self.params.get("coeffs", [])) != 2:
                raise ValueError("exterior trivial_chain needs coefficient polynomials [a, b]")
        if self.kind == "slit_grow":
            p0 = _poly(self.params.get("coeffs", [3.0, 2.0]), 0.0)
            if abs(p0.imag) > 1e-12 or not p0.real > 1:
                raise ValueError("slit_grow needs a real initial endpoint p(0) > 1")

    # -------------------------------------------------------------- geometry

    @property
    def center_is_inf(self) -> bool:
        if self.kind == "rescaled":
            return self.params["base"].center_is_inf
        if self.kind == "trivial_chain":
            return self.params.get("model", "disk") == "exterior"
        return self.kind in ("joukowski", "slit_grow")

    def center(self, t) -> complex:
        _check_t(t)
        if self.center_is_inf:
            return INF
        if self.kind == "trivial_chain":
            return self._scale(t) * _poly(self.params["coeffs"][0], t)
        if self.kind == "rescaled":
            return self.params["base"].center(t) * np.exp(-self._f(t))
        return 0j

    def _scale(self, t):
        return np.exp(t) if self.params.get("scale") == "exp" else 1.0

    def _chain_coeffs(self, t):
        s = self._scale(t)
        return [s * _poly(c, t) for c in self.params["coeffs"]]

    def slit_end(self, t) -> complex:
        return _poly(self.params.get("coeffs", [3.0, 2.0]), t)

    def _f(self, t) -> complex:
        R, c = self.params["series"]
        k = np.arange(1, len(c))
        return complex(c[0] + 2 * np.sum(c[1:] * (complex(t) / R) ** k))

    def riemann_map(self, t) -> RiemannMap:
        """Riemann map of U_t normalized by the tracked marked point phi_t(s_0)."""
        _check_t(t)
        t = complex(t)
        key = (t.real, t.imag)
        if key not in self._cache:
            self._cache[key] = self._build(t)
        return self._cache[key]

    def _build(self, t: complex) -> RiemannMap:
        k = self.kind
        if k == "affine_stretch":
            return unit_disk(0.0, 1.0) if t == 0 else ellipse_interior(t, self.n)
        if k == "joukowski":
            return joukowski_exterior(t)
        if k == "slit_grow":
            p = self.slit_end(t)
            return radial_slit_exterior(p.real) if abs(p.imag) < 1e-15 and t == 0 \
                else segment_slit_exterior(p, self.n)
        if k == "trivial_chain":
            return self._chain_map(t)
        base = self.params["base"]
        g = base.riemann_map(t)
        lam = complex(np.exp(-self._f(t)))
        chain = list(g.map.chain) + [Affine(lam)]
        cm = ConformalMap(chain, g.map.domain_tag, "rescaled")
        guess = None if g.newton_guess is None else g.newton_guess
        if guess is not None:
            guess = (lambda w, _g=guess, _l=lam: _g(w / _l))
        return RiemannMap(cm, scaled_disk(g.domain, lam), g.model, g.normalization,
                          g.marked_angle, guess)

    def _chain_map(self, t: complex) -> RiemannMap:
        c = self._chain_coeffs(t)
        if self.params.get("model", "disk") == "exterior":
            a, b = c
            lm = Laurent(a, b)
            bd = BoundaryCurve([FourierPiece({1: a, -1: b})], domain_on_left=False)
            dom = PointedDisk(bd, INF, a + b, "trivial_chain", {"t": t},
                              inside_fn=lambda z: np.abs(lm.inverse(np.asarray(z, complex))) > 1)
            return RiemannMap(ConformalMap([lm], "exterior", "trivial_chain"), dom, "exterior",
                              "marked", 0.0)
        poly = Polynomial(c, "trivial_chain")
        bd = BoundaryCurve([FourierPiece({j: cj for j, cj in enumerate(c) if cj != 0})])
        dom = PointedDisk(bd, c[0], complex(sum(c)), "trivial_chain", {"t": t})
        c0, c1 = c[0], c[1]
        return RiemannMap(ConformalMap([poly], "disk", "trivial_chain"), dom, "disk", "marked",
                          0.0, newton_guess=lambda w: (np.asarray(w, complex) - c0) / c1)

    def radius(self, t) -> float:
        return self.riemann_map(t).conformal_radius

    def base_points(self, m: int = 256) -> np.ndarray:
        """m boundary points of U_0: radial limits at equally spaced angles."""
        from .confmap import radial_limits
        pts, _, _ = radial_limits(self.riemann_map(0.0), np.arange(m) / m)
        return pts

    # -------------------------------------------------------------- motion

    def eval(self, z, t):
        return eval_motion(self, z, t)

    def describe(self) -> dict:
        if self.kind == "rescaled":
            R, c = self.params["series"]
            return {"kind": "rescaled", "base": self.params["base"].describe(),
                    "series_radius": R, "series": [[x.real, x.imag] for x in c]}
        return {"kind": self.kind, "params": self.params, "n": self.n}


def _check_t(t):
    if not abs(complex(t)) < 1:
        raise DomainError(f"parameter t = {t} is not in the unit disk")


def eval_motion(M: MotionFamily, z, t):
    """phi_t(z) for z on the base set."""
    _check_t(t)
    z = np.asarray(z, complex)
    t = complex(t)
    k = M.kind
    if t == 0 and k != "rescaled":
        return z.copy()
    if k == "affine_stretch":
        return z + t * np.conj(z)
    if k == "joukowski":
        return z + t / z
    if k == "slit_grow":
        p0, pt = M.slit_end(0.0), M.slit_end(t)
        on_slit = np.abs(z) > 1 + 1e-9
        return np.where(on_slit, 1 + (z - 1) * (pt - 1) / (p0 - 1), z)
    if k == "trivial_chain":
        g0, gt = M.riemann_map(0.0), M.riemann_map(t)
        w = _chain_preimage(g0, z)
        return gt.map(w)
    base = M.params["base"]
    lam0 = np.exp(M._f(0.0))
    return np.exp(-M._f(t)) * base.eval(lam0 * z, t)


def _chain_preimage(g: RiemannMap, z):
    """G_0^-1 on boundary points (closed form or Newton from the linear guess)."""
    z = np.asarray(z, complex)
    if g.map.has_inverse:
        return g.map.inverse(z)
    w = g.newton_guess(z)
    w = np.where(np.abs(w) > 0, w / np.abs(w), 1.0)
    return g.map.inverse(z, guess=w)


# ------------------------------------------------------------------ calculus


def holomorphy_residual(f: Callable, t0: complex, step: float = 1e-3) -> float:
    """Finite-difference |d f / d conj(t)| on the 4-point stencil."""
    t0 = complex(t0)
    s = float(step)
    v = [np.asarray(f(t0 + d), complex) for d in (s, -s, 1j * s, -1j * s)]
    return float(np.max(np.abs(v[0] - v[1] + 1j * v[2] - 1j * v[3])) / (4 * s))


def intrinsic_rotation(g: RiemannMap, theta: float, z, guess=None):
    """g o R_theta o g^-1 on interior points."""
    z = np.asarray(z, complex)
    if g.map.has_inverse:
        xi = g.map.inverse(z)
    elif guess is not None:
        xi = g.map.inverse(z, guess=guess)
    else:
        xi = g.inverse(z)
    return g.map(np.exp(2j * np.pi * theta) * xi)


def taylor_coefficients(g: RiemannMap, nmax: int = 4, radius: Optional[float] = None,
                        m: int = 128) -> np.ndarray:
    """Expansion coefficients of g at its base point by Cauchy integrals.

    Disk model: a_0..a_nmax of g(w) = sum a_k w^k on |w| = radius (default 1/2).
    Exterior model: a_1, a_0, a_-1, ... of g(w) = sum a_k w^k on |w| = radius (default 2).
    """
    r = (0.5 if g.model == "disk" else 2.0) if radius is None else radius
    u = np.exp(2j * np.pi * np.arange(m) / m)
    c = np.fft.fft(g.map(r * u)) / m
    if g.model == "disk":
        k = np.arange(nmax + 1)
        return c[k] / r ** k
    k = 1 - np.arange(nmax + 1)
    return c[k % m] / r ** k.astype(float)


# ------------------------------------------------------------------ circle maps


@dataclass
class CircleMapSample:
    angles: np.ndarray
    sigma: np.ndarray
    converged: np.ndarray
    note: str = ""

    def deviation(self) -> float:
        m = self.converged
        return float(circle_deviation(self.angles[m], self.sigma[m]).max()) if m.any() else math.nan

    def monotone(self, tol: float = 1e-6) -> bool:
        """Cyclic order preserved, up to backward steps of ``tol`` turns."""
        m = self.converged
        a, s = self.angles[m], self.sigma[m]
        o = np.argsort(a)
        steps = np.diff(np.append(s[o], s[o][0])) % 1.0
        steps = np.where(steps > 1.0 - tol, 0.0, steps)
        return bool(abs(steps.sum() - 1.0) < 1e-6 + tol * len(steps))


def nudge_inside(bd: BoundaryCurve, q, tags=None, delta: Optional[float] = None):
    """Move boundary points a distance ``delta`` into the domain along the
    normal of the nearest piece; two-sided points use the piece of their side."""
    q = np.asarray(q, complex)
    delta = 1e-5 * max(1.0, bd.diameter) if delta is None else delta
    tags = ["uni"] * len(q) if tags is None else list(tags)
    out = np.empty_like(q)
    groups = {"bi-minus": "minus", "bi-plus": "plus"}
    for tag in set(tags):
        m = np.array([x == tag for x in tags])
        side = groups.get(tag)
        pieces = None
        if side is not None:
            pieces = [i for i, p in enumerate(bd.pieces) if p.side == side]
        idx, sv, _ = bd.nearest(q[m], pieces)
        tan = np.empty(int(m.sum()), complex)
        for i in set(idx.tolist()):
            k = idx == i
            tan[k] = bd.pieces[i].deriv(sv[k])
        tan = tan / np.abs(tan)
        normal = 1j * tan if bd.domain_on_left else -1j * tan
        out[m] = q[m] + delta * normal
    return out


NUDGES = (1e-5, 1e-4, 1e-3)


def _pullback_angles(g: RiemannMap, q, tags, angles):
    """Angles of g^-1 at points nudged off the boundary.

    Very small nudges can land between the true boundary and a discretized
    one, so each point takes the smallest nudge whose angle agrees with the
    next larger nudge to 1e-3 turns.
    """
    bd = g.domain.boundary
    guess = g.model_point(angles, 1.0 - 1e-3)
    sig = []
    good = []
    for d in NUDGES:
        q_in = nudge_inside(bd, q, tags, d * max(1.0, bd.diameter))
        with np.errstate(all="ignore"):
            xi = g.map.inverse(q_in) if g.map.has_inverse else g.map.inverse(q_in, guess=guess)
        sig.append((np.angle(xi) / (2 * np.pi)) % 1.0)
        good.append(np.isfinite(xi) & (np.abs(np.abs(xi) - 1.0) < 1e-2))
    sigma = sig[-1].copy()
    ok = good[-1].copy()
    for k in range(len(NUDGES) - 2, -1, -1):
        agree = good[k] & good[k + 1] & (circle_deviation(sig[k], sig[k + 1]) < 1e-3)
        sigma = np.where(agree, sig[k], sigma)
        ok = ok | agree
    return sigma, ok


def induced_circle_map(M: MotionFamily, t, g0: Optional[RiemannMap] = None,
                       gt: Optional[RiemannMap] = None, n: int = 512,
                       corr_t=None, base=None) -> CircleMapSample:
    """sigma = g_t^-1 o phi_t o g_0 on n landing angles.

    Images are nudged into U_t on the side given by their access tag and pulled
    back with g_t^-1 (closed form or forward zipper). Maps without an inverse
    fall back to interpolation along the correspondence of g_t.
    """
    g0 = M.riemann_map(0.0) if g0 is None else g0
    gt = M.riemann_map(t) if gt is None else gt
    om0 = harmonic_measure(g0, n) if base is None else base
    q = eval_motion(M, om0.points, t)
    if gt.map.has_inverse or gt.newton_guess is not None:
        sigma, ok = _pullback_angles(gt, q, om0.tags, om0.angles)
    else:
        ct = boundary_correspondence(gt, n, offset=0.5 / n) if corr_t is None else corr_t
        sigma, dist, chord = boundary_angles(ct, q, om0.tags, with_chord=True)
        ok = dist < 1e-6 * max(1.0, gt.domain.boundary.diameter) + 0.5 * chord
    if (~ok).sum() > 0.01 * len(ok):
        raise NumericError(f"{int((~ok).sum())} of {len(ok)} boundary points could not be inverted")
    cm = CircleMapSample(om0.angles.copy(), sigma, ok, note=f"marked point {gt.domain.marked_point}")
    if not cm.monotone():
        raise NumericError("induced circle map is not orientation preserving")
    return cm


# ------------------------------------------------------------------ harmonicity


@dataclass
class HarmonicityReport:
    centers: list
    radii: list
    residuals: np.ndarray
    max_residual: float
    tol: float
    verdict: bool

    def as_dict(self) -> dict:
        return {"centers": [[complex(c).real, complex(c).imag] for c in self.centers],
                "radii": list(self.radii), "residuals": self.residuals.tolist(),
                "max_residual": self.max_residual, "tol": self.tol, "harmonic": self.verdict}


def harmonicity_scan(u: Callable, centers: Sequence = (0j,), radii: Sequence = (0.25, 0.5, 0.75),
                     n_circle: int = 16, tol: float = TAU["vi"]) -> HarmonicityReport:
    """Mean-value residuals |avg_k u(c + r e^{2 pi i k/n}) - u(c)|."""
    res = np.zeros((len(centers), len(radii)))
    e = np.exp(2j * np.pi * np.arange(n_circle) / n_circle)
    for i, c in enumerate(centers):
        uc = float(u(complex(c)))
        for j, r in enumerate(radii):
            if abs(complex(c)) + r >= 1:
                raise DomainError("circle leaves the unit disk")
            res[i, j] = abs(np.mean([float(u(complex(c) + r * x)) for x in e]) - uc)
    mx = float(res.max()) if res.size else 0.0
    return HarmonicityReport(list(centers), list(radii), res, mx, tol, mx < tol)


def log_radius(M: MotionFamily) -> Callable:
    return lambda t: math.log(M.radius(t))


# ------------------------------------------------------------------ harness


def verdict(dev: float, tau: float) -> str:
    if not np.isfinite(dev):
        return "error"
    if dev < tau:
        return "pass"
    if dev > 10 * tau:
        return "fail"
    return "indeterminate"


@dataclass
class FitnessRecord:
    t: complex
    dev_iii: float
    dev_iv: float
    dev_v: float
    dev_vi: float
    verdicts: dict
    consistent: bool
    errors: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"t": [self.t.real, self.t.imag], "dev_iii": self.dev_iii, "dev_iv": self.dev_iv,
                "dev_v": self.dev_v, "dev_vi": self.dev_vi, "verdicts": dict(self.verdicts),
                "consistent": self.consistent, "errors": dict(self.errors)}


@dataclass
class FitnessReport:
    motion: dict
    records: list
    tau: dict

    @property
    def consistent(self) -> bool:
        return all(r.consistent for r in self.records)

    def verdict_counts(self) -> dict:
        out = {}
        for r in self.records:
            for c, v in r.verdicts.items():
                out.setdefault(c, {}).setdefault(v, 0)
                out[c][v] += 1
        return out

    def all_(self, outcome: str, skip_origin: bool = True) -> bool:
        """Every determinate verdict (off the origin) equals ``outcome``."""
        vals = [v for r in self.records if not (skip_origin and r.t == 0)
                for v in r.verdicts.values() if v in ("pass", "fail")]
        return bool(vals) and all(v == outcome for v in vals)

    def as_dict(self) -> dict:
        return {"motion": self.motion, "tau": dict(self.tau), "consistent": self.consistent,
                "records": [r.as_dict() for r in self.records]}

    def rows(self):
        for r in self.records:
            yield (r.t.real, r.t.imag, r.dev_iii, r.dev_iv, r.dev_v, r.dev_vi,
                   ";".join(f"{c}={r.verdicts[c]}" for c in CONDITIONS), r.consistent)


def _probe_points(g: RiemannMap, m: int = 4):
    xi = np.exp(2j * np.pi * (np.arange(m) / m + 0.1))
    xi = 0.5 * xi if g.model == "disk" else 2.0 * xi
    return xi, g.map(xi)


ENCLOSING_RADII = (0.25, 0.5, 0.75, 0.9)


def enclosing_residuals(M: MotionFamily, radii=ENCLOSING_RADII, tol: float = TAU["vi"]):
    """Mean-value residuals of log rad on origin-centered circles."""
    rep = harmonicity_scan(log_radius(M), [0j], list(radii), 16, tol)
    return dict(zip(radii, rep.residuals[0]))


def _dev_vi(t: complex, circles: dict) -> float:
    """Largest residual over the circles enclosing t."""
    vals = [v for R, v in circles.items() if R >= abs(t) - 1e-12]
    return float(max(vals)) if vals else math.nan


def _record(M: MotionFamily, t: complex, n: int, om0, theta: float, step: float,
            tau: dict, circles) -> FitnessRecord:
    devs = {c: math.nan for c in CONDITIONS}
    errs = {}
    gt = M.riemann_map(t)
    try:
        ct = boundary_correspondence(gt, n, offset=0.5 / n)
        om_t = harmonic_measure(gt, n, ct)
    except Exception as e:  # reported per condition below
        ct = om_t = None
        errs["iii"] = errs["v"] = str(e)
    if ct is not None:
        try:
            devs["iii"] = induced_circle_map(M, t, gt=gt, n=n, corr_t=ct, base=om0).deviation()
        except Exception as e:
            errs["iii"] = str(e)
        try:
            pushed = pushforward(om0, lambda z: eval_motion(M, z, t), gt.domain.boundary)
            devs["v"] = measure_distance(pushed, om_t)
        except Exception as e:
            errs["v"] = str(e)
    try:
        xi, z = _probe_points(gt)

        def rho(s):
            g = M.riemann_map(s)
            return intrinsic_rotation(g, theta, z, guess=xi)

        devs["iv"] = holomorphy_residual(rho, t, step)
    except Exception as e:
        errs["iv"] = str(e)
    if isinstance(circles, Exception):
        errs["vi"] = str(circles)
    else:
        devs["vi"] = _dev_vi(t, circles)
    ver = {c: verdict(devs[c], tau[c]) for c in CONDITIONS}
    if t == 0:
        # phi_0 is the identity, so iii and v carry no information at the origin
        ver["iii"] = ver["v"] = "n/a"
    det = {v for v in ver.values() if v in ("pass", "fail")}
    return FitnessRecord(t, devs["iii"], devs["iv"], devs["v"], devs["vi"], ver, len(det) <= 1,
                         errs)


def fitness_report(M: MotionFamily, t_samples=None, n: int = 512, theta: float = GOLDEN,
                   step: float = 1e-3, tau: Optional[dict] = None, threads: int = 1) -> FitnessReport:
    """Per-t deviations and verdicts for conditions iii-vi."""
    ts = default_t_grid() if t_samples is None else np.asarray(t_samples, complex)
    for t in ts:
        _check_t(t)
    tau = dict(TAU if tau is None else tau)
    om0 = harmonic_measure(M.riemann_map(0.0), n)
    work = [complex(t) for t in ts]
    try:
        circles = enclosing_residuals(M, tol=tau["vi"])
    except Exception as e:
        circles = e

    def job(t):
        return _record(M, t, n, om0, theta, step, tau, circles)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            recs = list(ex.map(job, work))
    else:
        recs = [job(t) for t in work]
    return FitnessReport(M.describe(), recs, tau)


# ------------------------------------------------------------------ rescaling


def harmonic_series(u: Callable, R: float = 0.75, m: int = 64) -> np.ndarray:
    """Coefficients c_k with f(t) = c_0 + 2 sum_k c_k (t/R)^k holomorphic and
    Re f = u on |t| = R (Poisson extension plus conjugate function)."""
    e = np.exp(2j * np.pi * np.arange(m) / m)
    vals = np.array([u(R * x) for x in e], float)
    c = np.fft.fft(vals) / m
    c = c[: m // 2]
    c[0] = c[0].real
    return c


def rescale_to_constant_radius(M: MotionFamily, grid=None, tol: float = TAU["vi"],
                               R: float = 0.75, m: int = 64) -> MotionFamily:
    """Compose with dilations z -> exp(-f(t)) z, Re f = log rad, so the radius is constant."""
    u = log_radius(M)
    check = harmonicity_scan(u, [0j], [0.25, 0.5, R], 16, tol)
    if not check.verdict:
        raise PreconditionError(f"log rad is not harmonic (residual {check.max_residual:.3g})")
    c = harmonic_series(u, R, m)
    out = MotionFamily("rescaled", {"base": M, "series": (R, c)}, M.n)
    ts = default_t_grid() if grid is None else np.asarray(grid, complex)
    radii = np.array([out.radius(t) for t in ts])
    spread = float(np.max(np.abs(np.log(radii))))
    if spread > 2 * tol:
        raise NumericError(f"rescaled radius varies by {spread:.3g}")
    return out


# ------------------------------------------------------------------ builtins


def builtin_motion(name: str, n: int = 512) -> MotionFamily:
    if name == "trivial_disk":
        return MotionFamily("trivial_chain", {"model": "disk",
                                              "coeffs": [[0.0], [1.0], [0.0, 1 / 3]]}, n)
    if name == "trivial_exterior":
        return MotionFamily("trivial_chain", {"model": "exterior",
                                              "coeffs": [[1.0, 0.5], [0.0, 0.25]]}, n)
    if name == "trivial_scaled":
        return MotionFamily("trivial_chain", {"model": "exterior", "scale": "exp",
                                              "coeffs": [[1.0], [0.0, 0.25]]}, n)
    if name == "joukowski":
        return MotionFamily("joukowski", {}, n)
    if name == "affine_stretch":
        return MotionFamily("affine_stretch", {}, n)
    if name == "slit_grow":
        return MotionFamily("slit_grow", {"coeffs": [3.0, 2.0]}, n)
    raise ValueError(f"unknown builtin motion {name!r}")


SUITE = ("trivial_disk", "trivial_exterior", "joukowski", "affine_stretch", "slit_grow")
