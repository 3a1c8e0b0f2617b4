"""Geodesic zipper: conformal map from a point-sampled boundary to the disk.

The forward map F sends the domain onto the unit disk with the center going
to 0. It is a composition of an opening square root, one slit-removing stage
per sample point, a final squaring, and a Mobius map from the upper half-plane
to the disk. The Riemann map is F^-1, evaluated stage by stage in reverse.

Two input layouts are supported:

* ``jordan``: points z_0, ..., z_{n-1} on a Jordan curve; z_0 is the closing
  point and lands at model angle 0 before the final rotation.
* ``slit``: z_0 is the tip of a straight slit, z_1 its base, followed by the
  rest of the boundary which returns to the base.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

import numpy as np

from .geom import INF, is_inf
from .maps import DomainError, Germ, Primitive


class ZipperError(ValueError):
    """Construction failed (self-intersecting or badly ordered input)."""


def _stage_fwd(z, beta, c):
    """Slit-removing stage in the upper half plane; returns (value, derivative)."""
    with np.errstate(divide="ignore", invalid="ignore"):
        den = 1.0 - z * beta
        t = z / den
        f = t * np.sqrt(1.0 + (c * c) / (t * t))
        df = (1.0 / den ** 2) * (t / f)
    return f, df


def _stage_inv(w, beta, c):
    with np.errstate(divide="ignore", invalid="ignore"):
        u = w * np.sqrt(1.0 - (c * c) / (w * w))
        return u / (1.0 + u * beta)


def _stage_real(x: float, beta: float, c: float, approach: float = 0.0) -> float:
    """Stage applied to a real point (or infinity); ``approach`` resolves x = 0."""
    if np.isinf(x):
        if beta == 0.0:
            return np.inf
        t = -1.0 / beta
    else:
        if x == 0.0:
            return c if approach >= 0 else -c
        den = 1.0 - x * beta
        if den == 0.0:
            return np.inf
        t = x / den
    return float(np.sign(t) * np.hypot(t, c))


@dataclass
class ZipperData:
    z0: complex
    z1: complex
    betas: np.ndarray
    cs: np.ndarray
    zeta_fin: float
    sign: int
    h: complex  # center image in the upper half-plane
    rot: complex  # unit rotation applied last
    center: complex
    closing: dict = field(default_factory=dict)

    # ---- forward (domain -> disk)
    def _open(self, z):
        with np.errstate(divide="ignore", invalid="ignore"):
            q = (z - self.z1) / (z - self.z0)
            return 1j * np.sqrt(q)

    def _final(self, z):
        with np.errstate(divide="ignore", invalid="ignore"):
            if np.isinf(self.zeta_fin):
                m = z
                dm = np.ones_like(z)
            else:
                den = 1.0 - z / self.zeta_fin
                m = z / den
                dm = 1.0 / den ** 2
            return self.sign * m * m, self.sign * 2 * m * dm

    def _to_disk(self, w):
        with np.errstate(divide="ignore", invalid="ignore"):
            out = self.rot * (w - self.h) / (w - np.conj(self.h))
            d = self.rot * (self.h - np.conj(self.h)) / (w - np.conj(self.h)) ** 2
        return out, d

    def forward(self, z, with_deriv: bool = False):
        z = np.asarray(z, complex)
        w = self._open(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            dw = 1j * 0.5 / np.sqrt((z - self.z1) / (z - self.z0)) * \
                (self.z1 - self.z0) / (z - self.z0) ** 2
        for beta, c in zip(self.betas, self.cs):
            w, d = _stage_fwd(w, beta, c)
            dw = dw * d
        w, d = self._final(w)
        dw = dw * d
        w, d = self._to_disk(w)
        dw = dw * d
        return (w, dw) if with_deriv else w

    # ---- inverse (disk -> domain)
    def inverse(self, zeta):
        zeta = np.asarray(zeta, complex)
        u = zeta / self.rot
        with np.errstate(divide="ignore", invalid="ignore"):
            w = (self.h - np.conj(self.h) * u) / (1.0 - u)
            v = np.sqrt(self.sign * w)
            v = np.where(v.imag < 0, -v, v)
            if not np.isinf(self.zeta_fin):
                v = v / (1.0 + v / self.zeta_fin)
        for beta, c in zip(self.betas[::-1], self.cs[::-1]):
            v = _stage_inv(v, beta, c)
        with np.errstate(divide="ignore", invalid="ignore"):
            q = -v * v
            return np.where(q == 1.0, INF, (self.z1 - q * self.z0) / (1.0 - q))

    def germ_at_center(self):
        """Germ of F^-1 at 0: (center, 1/F'(center)) or (INF, d) with F ~ d/z."""
        if not is_inf(self.center):
            _, d = self.forward(np.array([self.center]), with_deriv=True)
            return Germ(self.center, 1.0 / complex(d[0]))
        # F(z) ~ d / z near infinity; propagate the opening germ through the stages
        mu = 1j * (self.z0 - self.z1) / 2.0
        p, k = 1j, mu
        for beta, c in zip(self.betas, self.cs):
            f, df = _stage_fwd(np.array([p]), beta, c)
            p, k = complex(f[0]), k * complex(df[0])
        f, df = self._final(np.array([p]))
        p, k = complex(f[0]), k * complex(df[0])
        f, df = self._to_disk(np.array([p]))
        k = k * complex(df[0])
        # F ~ k / z, so F^-1(zeta) ~ k / zeta: a pole with residue k
        return Germ(INF, k)


def _track_real(x, betas, cs, start=0, approach=0.0):
    for j in range(start, len(betas)):
        x = _stage_real(x, betas[j], cs[j], approach if j == start else 0.0)
    return x


def build_zipper(points, center, layout: str = "jordan", normalize: str = "derivative",
                 marked_index: int = 0) -> ZipperData:
    """Construct zipper data.

    ``normalize`` is ``"derivative"`` (positive derivative at the center) or
    ``"marked"`` (point ``points[marked_index]`` goes to 1; only index 0, the
    closing point in the jordan layout or the tip in the slit layout, is
    supported without extra tracking).
    """
    z = np.asarray(points, complex)
    n = len(z)
    if n < 8:
        raise ZipperError("need at least 8 boundary points")
    if layout == "slit":
        z0, z1 = z[0], z[1]
        rest = z[2:]
    else:
        z0, z1 = z[0], z[1]
        rest = z[2:]
    with np.errstate(divide="ignore", invalid="ignore"):
        w = 1j * np.sqrt((rest - z1) / (rest - z0))
    center_img = 1j if is_inf(center) else complex(1j * cmath.sqrt((center - z1) / (center - z0)))
    closing = 0.0
    betas, cs = [], []
    cur = w.copy()
    h = center_img
    end_val = np.inf  # closing point value (z0 in the jordan layout)
    tip_val = np.inf
    m = len(rest)
    for k in range(m):
        a = cur[k]
        if layout == "slit" and k == m - 1 and abs(rest[k] - z1) < 1e-12 * max(1.0, abs(z1)):
            # duplicate base point closes the loop; resolved below
            break
        if not (a.imag > 0):
            raise ZipperError(f"sample {k + 2} does not map into the upper half-plane; "
                              "points may self-intersect or be misordered")
        beta = a.real / abs(a) ** 2
        c = abs(a) ** 2 / a.imag
        betas.append(beta)
        cs.append(c)
        if layout == "slit" and k == 0:
            approach = float(np.sign(cur[m - 2].real)) if m >= 2 else 1.0
        if k + 1 < m:
            cur[k + 1:], _ = _stage_fwd(cur[k + 1:], beta, c)
        hv, _ = _stage_fwd(np.array([h]), beta, c)
        h = complex(hv[0])
        if layout == "jordan":
            end_val = _stage_real(end_val, beta, c)
        else:
            tip_val = _stage_real(tip_val, beta, c)
            if k == 0:
                closing = _stage_real(0.0, beta, c, approach=approach)
            else:
                closing = _stage_real(closing, beta, c)
    betas = np.array(betas)
    cs = np.array(cs)
    zeta_fin = end_val if layout == "jordan" else closing
    if not np.isfinite(zeta_fin) and layout == "slit":
        raise ZipperError("closing point escaped to infinity")
    # final squaring: pick the sign putting the center in the upper half-plane
    mh = h if np.isinf(zeta_fin) else h / (1.0 - h / zeta_fin)
    sign = 1 if (mh * mh).imag > 0 else -1
    hfin = sign * mh * mh
    if not hfin.imag > 0:
        raise ZipperError("center does not land in the upper half-plane")
    data = ZipperData(z0=z0, z1=z1, betas=betas, cs=cs, zeta_fin=float(zeta_fin), sign=sign,
                      h=hfin, rot=1.0 + 0j, center=center)
    if normalize == "derivative":
        g = data.germ_at_center()
        data.rot = complex(np.exp(1j * np.angle(g.coef)))
    elif normalize == "marked":
        if marked_index != 0:
            raise ZipperError("marked-point normalization needs the marked point first")
        if layout == "jordan":
            x = np.inf  # z0 ends at infinity after the squaring
        else:
            x = tip_val
            if np.isfinite(x):
                x = x / (1.0 - x / zeta_fin)
                x = sign * x * x
        # Mobius image of the real point x (or infinity) on the unit circle
        img = 1.0 + 0j if np.isinf(x) else (x - hfin) / (x - np.conj(hfin))
        data.rot = complex(1.0 / (img / abs(img)))
    else:
        raise ValueError(f"unknown normalization {normalize!r}")
    data.closing = {"zeta_fin": float(zeta_fin), "tip": float(tip_val)}
    return data


@dataclass
class ZipperInverse(Primitive):
    """Primitive sending the model disk onto the zipped domain."""

    data: ZipperData
    name = "zipper"

    def __call__(self, zeta):
        return self.data.inverse(zeta)

    def deriv(self, zeta):
        z = self.data.inverse(zeta)
        _, d = self.data.forward(z, with_deriv=True)
        return 1.0 / d

    def inverse(self, z):
        return self.data.forward(z)

    def germ(self, g: Germ) -> Germ:
        if g.infinite or g.point != 0:
            raise DomainError("zipper germ is only available at the model center")
        h = self.data.germ_at_center()
        if h.infinite:
            return Germ(INF, h.coef / g.coef)
        return Germ(h.point, h.coef * g.coef)

    def coefficients(self):
        d = self.data
        return [d.z0, d.z1, d.zeta_fin, d.sign, d.h, d.rot, len(d.betas)]
