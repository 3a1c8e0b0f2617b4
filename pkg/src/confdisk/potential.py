"""Logarithmic energy, discrete equilibrium measures and the energy/radius identity."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .confmap import RiemannMap, radial_limits
from .maps import NumericError
from .measure import DiscreteMeasure, harmonic_measure

# energy of the uniform probability measure on a segment of length h is -log h + 3/2
SEGMENT_SELF_ENERGY = 1.5


def _log_kernel(z, block: int = 1024):
    z = np.asarray(z, complex)
    n = len(z)
    K = np.empty((n, n))
    for s in range(0, n, block):
        with np.errstate(divide="ignore"):
            K[s:s + block] = -np.log(np.abs(z[s:s + block, None] - z[None, :]))
    return K


def energy(mu: DiscreteMeasure) -> float:
    """-sum_{i != j} w_i w_j log|z_i - z_j| (diagonal excluded)."""
    z, w = mu.points, mu.weights
    if len(z) < 2:
        raise ValueError("energy needs at least two atoms")
    K = _log_kernel(z)
    np.fill_diagonal(K, 0.0)
    pos = w > 0
    Kp = K[np.ix_(pos, pos)]
    if not np.all(np.isfinite(Kp)):
        raise ValueError("coincident atoms with positive weight")
    return float(w[pos] @ Kp @ w[pos])


def cell_energy(points, weights, cell_lengths) -> float:
    """Energy with each atom smeared uniformly over a segment of its cell length."""
    z = np.asarray(points, complex)
    w = np.asarray(weights, float)
    K = _log_kernel(z)
    np.fill_diagonal(K, -np.log(np.asarray(cell_lengths, float)) + SEGMENT_SELF_ENERGY)
    if not np.all(np.isfinite(K)):
        raise ValueError("coincident atoms")
    return float(w @ K @ w)


def merge_atoms(points, weights, lengths, tol: float):
    """Merge atoms closer than ``tol`` (summing weights, averaging cell lengths)."""
    z = np.asarray(points, complex)
    tree = cKDTree(np.column_stack([z.real, z.imag]))
    parent = np.arange(len(z))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in sorted(tree.query_pairs(tol)):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
    roots = np.array([find(i) for i in range(len(z))])
    uniq, inv = np.unique(roots, return_inverse=True)
    w = np.bincount(inv, weights=weights)
    L = np.bincount(inv, weights=lengths) / np.bincount(inv)
    return z[uniq], w, L


@dataclass
class EnergyReport:
    energy: float
    log_rad: Optional[float] = None
    discrepancy: Optional[float] = None
    iterations: int = 0
    converged: bool = True
    minimal: bool = False
    gap: Optional[float] = None
    measure: Optional[DiscreteMeasure] = field(default=None, repr=False)

    def as_dict(self) -> dict:
        return {"energy": self.energy, "log_rad": self.log_rad, "discrepancy": self.discrepancy,
                "iterations": self.iterations, "converged": self.converged}


def harmonic_cells(g: RiemannMap, n: int):
    """Harmonic measure with landing points at cell midpoints and the chord
    lengths of the cells [i/n, (i+1)/n]."""
    om = harmonic_measure(g, n)
    edges, _, _ = radial_limits(g, np.arange(n) / n)
    idx = np.rint(om.angles * n - 0.5).astype(int) % n
    L = np.abs(edges[(idx + 1) % n] - edges[idx])
    return om, L


def check_energy_radius(g: RiemannMap, n: int = 512) -> EnergyReport:
    """Energy of the discretized harmonic measure versus log rad(U, inf).

    rad is |g'(inf)| (the logarithmic capacity of the boundary), so the minimal
    energy is -log rad and the discrepancy is |energy + log rad|.
    """
    if g.model != "exterior":
        raise ValueError("the energy identity needs a domain centered at infinity")
    om, L = harmonic_cells(g, n)
    tol = 1e-9 * max(1.0, g.domain.boundary.diameter)
    z, w, Lm = merge_atoms(om.points, om.weights, L, tol)
    e = cell_energy(z, w, Lm)
    lr = float(np.log(g.conformal_radius))
    return EnergyReport(e, lr, abs(e + lr), 0, True, measure=om)


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sorting method)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    k = np.arange(1, len(v) + 1)
    rho = np.nonzero(u - css / k > 0)[0][-1]
    theta = css[rho] / (rho + 1)
    return np.maximum(v - theta, 0.0)


def support_cells(points, closed: bool = True) -> np.ndarray:
    """Cell lengths for an ordered point list (half the distance to each neighbor)."""
    z = np.asarray(points, complex)
    gaps = np.abs(np.diff(z))
    if closed:
        close = abs(z[0] - z[-1])
        left = np.concatenate([[close], gaps])
        right = np.concatenate([gaps, [close]])
    else:
        left = np.concatenate([[gaps[0]], gaps])
        right = np.concatenate([gaps, [gaps[-1]]])
    return (left + right) / 2


def segment_support(a: complex, b: complex, n: int):
    """Midpoints of n equal cells of [a, b] and their lengths."""
    a, b = complex(a), complex(b)
    x = a + (b - a) * (np.arange(n) + 0.5) / n
    return x, np.full(n, abs(b - a) / n)


def boundary_support(boundary, n: int):
    """About n support points at equal-arclength cell midpoints along the
    point-set pieces of a boundary, with chord cell lengths. Returns (points, lengths)."""
    idx = boundary.point_set_pieces()
    lens = np.array([boundary.pieces[i].length for i in idx])
    counts = np.maximum(1, np.rint(n * lens / lens.sum()).astype(int))
    grid = np.linspace(0.0, 1.0, 64 * max(counts) + 1)
    pts, cells = [], []
    for i, m in zip(idx, counts):
        p = boundary.pieces[i]
        arc = np.asarray(p.arclength(grid), float)
        at = lambda u: np.interp(u * arc[-1], arc, grid)
        e = np.asarray(p.point(at(np.arange(m + 1) / m)), complex)
        pts.append(np.asarray(p.point(at((np.arange(m) + 0.5) / m)), complex))
        cells.append(np.abs(np.diff(e)))
    return np.concatenate(pts), np.concatenate(cells)


def equilibrium_weights(points, cell_lengths, max_iter: int = 20000, tol: float = 1e-9):
    """Minimize w^T K w over the simplex by accelerated projected gradient.

    Returns (weights, objective, iterations, converged).
    """
    z = np.asarray(points, complex)
    n = len(z)
    if n < 8:
        raise ValueError("need at least 8 support points")
    K = _log_kernel(z)
    np.fill_diagonal(K, -np.log(np.asarray(cell_lengths, float)) + SEGMENT_SELF_ENERGY)
    if not np.all(np.isfinite(K)):
        raise ValueError("support points must be distinct")
    L = 2.0 * np.max(np.sum(np.abs(K), axis=1))
    step = 1.0 / L
    w = np.full(n, 1.0 / n)
    y = w.copy()
    tk = 1.0
    f_prev = w @ K @ w
    for it in range(1, max_iter + 1):
        grad = 2.0 * (K @ y)
        w_new = project_simplex(y - step * grad)
        f_new = w_new @ K @ w_new
        if f_new > f_prev:
            # restart the momentum
            tk = 1.0
            y = w.copy()
            grad = 2.0 * (K @ y)
            w_new = project_simplex(y - step * grad)
            f_new = w_new @ K @ w_new
        g_full = 2.0 * (K @ w_new)
        pg = (w_new - project_simplex(w_new - step * g_full)) / step
        t_next = 0.5 * (1 + np.sqrt(1 + 4 * tk * tk))
        y = w_new + ((tk - 1) / t_next) * (w_new - w)
        w, tk, f_prev = w_new, t_next, f_new
        if np.linalg.norm(pg) < tol:
            return w, float(f_new), it, True
    return w, float(f_prev), max_iter, False


def equilibrium_measure(points, boundary, cell_lengths=None, closed: bool = True,
                        max_iter: int = 20000, tol: float = 1e-9, comparisons=(),
                        raise_on_fail: bool = True):
    """Discrete equilibrium measure on the given support."""
    pts = np.asarray(points, complex)
    cells = support_cells(pts, closed) if cell_lengths is None else np.asarray(cell_lengths, float)
    w, f, it, ok = equilibrium_weights(pts, cells, max_iter, tol)
    if not ok and raise_on_fail:
        err = NumericError(f"equilibrium solver did not converge in {max_iter} iterations")
        err.last_iterate = w
        raise err
    w = w / w.sum()
    mu = DiscreteMeasure(pts, w, boundary)
    gaps = [cell_energy(pts, c, cells) - f for c in comparisons]
    rep = EnergyReport(f, iterations=it, converged=ok, minimal=ok,
                       gap=min(gaps) if gaps else None, measure=mu)
    return mu, rep


def arcsine_cell_masses(a: float, b: float, n: int) -> np.ndarray:
    """Cell masses of the arcsine law on [a, b] for n equal cells."""
    e = a + (b - a) * np.arange(n + 1) / n
    F = 0.5 + np.arcsin(np.clip((2 * e - a - b) / (b - a), -1, 1)) / np.pi
    return np.diff(F)


def mean_value_residual(f, center: complex = 0.0, radius: float = 0.5, m: int = 16) -> float:
    """|mean of f over the circle - f(center)|."""
    t = center + radius * np.exp(2j * np.pi * np.arange(m) / m)
    vals = np.array([f(x) for x in t], float)
    return float(abs(vals.mean() - f(center)))


@dataclass
class EnergyScanRow:
    t: complex
    h: float
    energy: float
    above: bool

    def as_dict(self) -> dict:
        return {"t": [self.t.real, self.t.imag], "h": self.h, "energy": self.energy,
                "above": self.above}


@dataclass
class EnergyScan:
    rows: list
    residuals: dict
    tol: float

    def as_dict(self) -> dict:
        return {"rows": [r.as_dict() for r in self.rows],
                "mean_value_residuals": {str(k): v for k, v in self.residuals.items()},
                "tol": self.tol}


def energy_pushforward_scan(motion, t_grid, n: int = 512, tol: float = 1e-3) -> EnergyScan:
    """h(t) = E((phi_t)_* omega_0) against E(omega_t) over a t-grid.

    Both energies use the same cell discretization: atoms at cell midpoints,
    cell chords as self-energy lengths (pushed by phi_t for h). The mean-value
    residual of h is reported for each ring of the grid about the origin.

    h(t) >= E(omega_t) is only guaranteed when the center is infinity, where
    omega_t is the equilibrium measure. For interior centers the flag is
    informational.
    """
    g0 = motion.riemann_map(0.0)
    om0, _ = harmonic_cells(g0, n)
    edges0, _, _ = radial_limits(g0, np.arange(n) / n)
    idx = np.rint(om0.angles * n - 0.5).astype(int) % n
    rows = []
    ts = [complex(t) for t in t_grid]
    for t in ts:
        pts = np.asarray(motion.eval(om0.points, t), complex)
        e = np.asarray(motion.eval(edges0, t), complex)
        L = np.abs(e[(idx + 1) % n] - e[idx])
        diam = max(1.0, float(np.max(np.abs(pts - pts.mean()))) * 2)
        z, w, Lm = merge_atoms(pts, om0.weights, L, 1e-9 * diam)
        h = cell_energy(z, w, Lm)
        om_t, Lt = harmonic_cells(motion.riemann_map(t), n)
        z, w, Lm = merge_atoms(om_t.points, om_t.weights, Lt, 1e-9 * diam)
        et = cell_energy(z, w, Lm)
        rows.append(EnergyScanRow(t, h, et, h >= et - tol))
    h0 = next((r.h for r in rows if r.t == 0), None)
    residuals = {}
    if h0 is not None:
        rings = {}
        for r in rows:
            if r.t != 0:
                rings.setdefault(round(abs(r.t), 12), []).append(r.h)
        residuals = {R: float(abs(np.mean(v) - h0)) for R, v in sorted(rings.items())}
    return EnergyScan(rows, residuals, tol)
