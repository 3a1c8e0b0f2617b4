"""Walk-on-spheres estimate of harmonic measure (independent of any Riemann map).

Unbounded domains (in particular those centered at infinity) use an exact
restart: a walker leaving the disk |z - z0| <= R is put back on that circle
according to the exterior Poisson kernel, and walkers from infinity start on
it uniformly. Walks are split into a fixed number of chunks, each driven by its
own RNG substream, so results do not depend on the number of threads.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from .geom import PointedDisk
from .measure import DiscreteMeasure

DEFAULT_SEED = 0xC0FFEE
N_STREAMS = 16


def _exterior_restart(z, z0, R, u):
    """Hitting point on |w - z0| = R for walkers outside it (uniform draws u)."""
    zeta = (R / np.conj(z - z0))  # inverse point, normalized by R
    e = np.exp(2j * np.pi * u)
    return z0 + R * (e + zeta) / (1 + np.conj(zeta) * e)


def _walk_chunk(disk: PointedDisk, n: int, rng: np.random.Generator, eps: float, r_cap: float,
                z0: complex, R: Optional[float], budget: int):
    bd = disk.boundary
    if disk.center_is_inf:
        pos = z0 + R * np.exp(2j * np.pi * rng.random(n))
    else:
        pos = np.full(n, disk.center, complex)
    active = np.ones(n, bool)
    steps = np.zeros(n, np.int64)
    final = np.full(n, np.nan + 0j)
    while np.any(active):
        idx = np.nonzero(active)[0]
        z = pos[idx]
        if R is not None:
            far = np.abs(z - z0) > R
            if np.any(far):
                z[far] = _exterior_restart(z[far], z0, R, rng.random(int(far.sum())))
        d = bd.distance(z)
        hit = d < eps
        final[idx[hit]] = z[hit]
        active[idx[hit]] = False
        go = ~hit
        moving = idx[go]
        rad = np.minimum(d[go], r_cap)
        pos[moving] = z[go] + rad * np.exp(2j * np.pi * rng.random(len(moving)))
        steps[moving] += 1
        over = moving[steps[moving] >= budget]
        if len(over):
            active[over] = False
            final[over] = np.nan
    return final


def walk_on_spheres(disk: PointedDisk, n_samples: int = 100_000, seed: int = DEFAULT_SEED,
                    r_cap: Optional[float] = None, eps: Optional[float] = None,
                    threads: int = 1, budget: int = 1_000_000) -> DiscreteMeasure:
    bd = disk.boundary
    diam = bd.diameter
    eps = 1e-6 * diam if eps is None else eps
    r_cap = 10.0 * diam if r_cap is None else r_cap
    unbounded = disk.center_is_inf or bool(np.all(disk.inside(np.array([1e6 * (1 + diam) + 0j]))))
    z0 = disk.anchor()
    R = None
    if unbounded:
        pts = bd.samples(256)
        R = 2.0 * float(np.max(np.abs(pts - z0))) + 1e-3
    streams = np.random.SeedSequence(int(seed)).spawn(N_STREAMS)
    sizes = [n_samples // N_STREAMS + (1 if k < n_samples % N_STREAMS else 0)
             for k in range(N_STREAMS)]

    def job(k):
        return _walk_chunk(disk, sizes[k], np.random.default_rng(streams[k]), eps, r_cap,
                           z0, R, budget)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            chunks = list(ex.map(job, range(N_STREAMS)))
    else:
        chunks = [job(k) for k in range(N_STREAMS)]
    final = np.concatenate(chunks)
    lost = ~np.isfinite(final)
    diag = {"lost": int(lost.sum()), "warnings": []}
    if lost.sum() > 1e-3 * n_samples:
        diag["warnings"].append(f"{int(lost.sum())} walkers exceeded the step budget")
    final = final[~lost]
    piece, s, _ = bd.nearest(final)
    snapped = np.empty(len(final), complex)
    tags = np.array(["uni"] * len(final), dtype=object)
    inward = 1 if bd.domain_on_left else -1
    for i, p in enumerate(bd.pieces):
        m = piece == i
        if not np.any(m):
            continue
        snapped[m] = p.point(s[m])
        if p.slit is not None:
            # side of the physical approach, relative to the piece declared minus
            ref = next(q for q in bd.pieces if q.slit == p.slit and q.side == "minus")
            side = ref.physical_side(final[m])
            tags[m] = np.where(side == inward, "bi-minus", "bi-plus")
    w = np.full(len(snapped), 1.0 / len(snapped))
    return DiscreteMeasure(snapped, w, bd, list(tags), diagnostics=diag)
