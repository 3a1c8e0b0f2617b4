"""Primitive conformal maps, chains, and first-order germ tracking.

A germ records how a chain behaves at the model base point. With local
parameter tau (tau = zeta on the unit disk, tau = 1/zeta on the exterior
model) the chain is either ``p + d*tau`` (finite point) or ``k/tau`` (infinite
point). The conformal radius is the modulus of the final coefficient.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .geom import INF, is_inf


class DomainError(ValueError):
    """Evaluation left a primitive's domain of validity."""

    def __init__(self, msg: str, index: Optional[int] = None):
        super().__init__(msg if index is None else f"{msg} (primitive {index})")
        self.index = index


class NumericError(RuntimeError):
    """An iterative solver did not converge."""


@dataclass(frozen=True)
class Germ:
    point: complex
    coef: complex

    @property
    def infinite(self) -> bool:
        return is_inf(self.point)


def _arr(z):
    return np.asarray(z, dtype=complex)


class Primitive:
    name = "primitive"
    domain = "C"
    range = "C"

    def __call__(self, z):
        raise NotImplementedError

    def deriv(self, z):
        raise NotImplementedError

    def germ(self, g: Germ) -> Germ:
        if g.infinite:
            raise DomainError(f"{self.name} has no germ rule at infinity")
        return Germ(complex(self(g.point)), complex(self.deriv(g.point)) * g.coef)

    def inverse(self, w):
        raise NotImplementedError(f"{self.name} has no closed-form inverse")

    @property
    def has_inverse(self) -> bool:
        return type(self).inverse is not Primitive.inverse

    def valid(self, z):
        return np.ones(np.shape(z), bool)

    def coefficients(self) -> list:
        return []

    def describe(self) -> dict:
        return {"name": self.name, "coefficients": self.coefficients()}


@dataclass
class Mobius(Primitive):
    a: complex
    b: complex
    c: complex
    d: complex
    name = "mobius"

    def __post_init__(self):
        self.a, self.b, self.c, self.d = (complex(x) for x in (self.a, self.b, self.c, self.d))
        if abs(self.a * self.d - self.b * self.c) == 0:
            raise ValueError("Mobius map with zero determinant")

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, z):
        z = _arr(z)
        den = self.c * z + self.d
        with np.errstate(divide="ignore", invalid="ignore"):
            out = (self.a * z + self.b) / den
        return np.where(den == 0, INF, out)

    def deriv(self, z):
        z = _arr(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.det / (self.c * z + self.d) ** 2

    def germ(self, g: Germ) -> Germ:
        a, b, c, d = self.a, self.b, self.c, self.d
        if g.infinite:
            if c == 0:
                return Germ(INF, (a / d) * g.coef)
            mu = (b * c - a * d) / c ** 2
            return Germ(a / c, mu / g.coef)
        p = g.point
        # a germ that numerically sits on the pole is treated as the pole
        if abs(c * p + d) <= 1e-12 * (abs(c * p) + abs(d)):
            return Germ(INF, ((a * p + b) / c) / g.coef)
        return Germ((a * p + b) / (c * p + d), self.det / (c * p + d) ** 2 * g.coef)

    def inverse(self, w):
        return Mobius(self.d, -self.b, -self.c, self.a)(w)

    def inverted(self) -> "Mobius":
        return Mobius(self.d, -self.b, -self.c, self.a)

    def then(self, other: "Mobius") -> "Mobius":
        """Composition ``other o self``."""
        return Mobius(other.a * self.a + other.b * self.c, other.a * self.b + other.b * self.d,
                      other.c * self.a + other.d * self.c, other.c * self.b + other.d * self.d)

    def coefficients(self):
        return [self.a, self.b, self.c, self.d]


def Affine(a: complex, b: complex = 0.0) -> Mobius:
    """z -> a z + b."""
    m = Mobius(a, b, 0.0, 1.0)
    m.name = "affine"
    return m


def Rotation(turns: float) -> Mobius:
    return Affine(cmath.exp(2j * cmath.pi * turns), 0.0)


def Inversion() -> Mobius:
    m = Mobius(0.0, 1.0, 1.0, 0.0)
    m.name = "inversion"
    return m


def disk_automorphism(c: complex) -> Mobius:
    """Unit-disk automorphism w -> (w + c)/(1 + conj(c) w), sending 0 to c."""
    return Mobius(1.0, c, np.conj(c), 1.0)


@dataclass
class Power(Primitive):
    """z**alpha with the branch cut along the ray at angle ``cut`` (radians)."""

    alpha: float
    cut: float = np.pi
    name = "power"

    def _log(self, z):
        z = _arr(z)
        arg = np.angle(z * np.exp(-1j * (self.cut - np.pi))) + (self.cut - np.pi)
        return np.log(np.abs(z)) + 1j * arg

    def __call__(self, z):
        with np.errstate(divide="ignore"):
            return np.exp(self.alpha * self._log(z))

    def deriv(self, z):
        z = _arr(z)
        return self.alpha * self(z) / z

    def inverse(self, w):
        return Power(1.0 / self.alpha, self.cut * self.alpha)(w)

    def valid(self, z):
        z = _arr(z)
        return np.abs(np.angle(z * np.exp(-1j * self.cut))) > 1e-15

    def coefficients(self):
        return [self.alpha, self.cut]


@dataclass
class Joukowski(Primitive):
    """Z(z) = z + 1/z. ``branch`` selects the inverse ('exterior' or 'interior')."""

    branch: str = "exterior"
    name = "joukowski"

    def __call__(self, z):
        z = _arr(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            return z + 1.0 / z

    def deriv(self, z):
        z = _arr(z)
        return 1.0 - 1.0 / z ** 2

    def germ(self, g: Germ) -> Germ:
        if g.infinite:
            return Germ(INF, g.coef)
        if g.point == 0:
            return Germ(INF, 1.0 / g.coef)
        return super().germ(g)

    def inverse(self, w):
        z = joukowski_exterior_inverse(w)
        if self.branch == "interior":
            with np.errstate(divide="ignore"):
                z = 1.0 / z
        return z

    def coefficients(self):
        return [self.branch]


def joukowski_exterior_inverse(w):
    """Inverse of Z(z) = z + 1/z onto |z| > 1, cut exactly on [-2, 2]."""
    w = _arr(w)
    return (w + np.sqrt(w - 2.0) * np.sqrt(w + 2.0)) / 2.0


@dataclass
class JoukowskiExteriorInverse(Primitive):
    name = "joukowski_exterior_inverse"

    def __call__(self, w):
        return joukowski_exterior_inverse(w)

    def deriv(self, w):
        z = self(w)
        return 1.0 / (1.0 - 1.0 / z ** 2)

    def germ(self, g: Germ) -> Germ:
        if g.infinite:
            return Germ(INF, g.coef)
        return super().germ(g)

    def inverse(self, z):
        return Joukowski()(z)

    def valid(self, w):
        w = _arr(w)
        return ~((np.abs(w.imag) == 0) & (np.abs(w.real) < 2))


@dataclass
class Polynomial(Primitive):
    """Explicit polynomial sum_k coeffs[k] z**k (finite germs only)."""

    coeffs: Sequence[complex]
    label: str = "polynomial"
    name = "polynomial"

    def __post_init__(self):
        self.coeffs = [complex(c) for c in self.coeffs]

    def __call__(self, z):
        return np.polyval(self.coeffs[::-1], _arr(z))

    def deriv(self, z):
        dc = [k * c for k, c in enumerate(self.coeffs)][1:]
        return np.polyval(dc[::-1], _arr(z)) if dc else np.zeros(np.shape(z), complex)

    def coefficients(self):
        return [self.label] + list(self.coeffs)


@dataclass
class Laurent(Primitive):
    """z -> a z + b/z + c; ``branch`` picks the larger ('exterior') or smaller
    ('interior') root when inverting."""

    a: complex
    b: complex
    c: complex = 0.0
    branch: str = "exterior"
    name = "laurent"

    def __call__(self, z):
        z = _arr(z)
        with np.errstate(divide="ignore", invalid="ignore"):
            return self.a * z + self.b / z + self.c

    def deriv(self, z):
        z = _arr(z)
        return self.a - self.b / z ** 2

    def germ(self, g: Germ) -> Germ:
        if g.infinite:
            if self.a == 0:
                return Germ(self.c, self.b / g.coef)
            return Germ(INF, self.a * g.coef)
        if g.point == 0:
            if self.b == 0:
                return Germ(self.c, self.a * g.coef)
            return Germ(INF, self.b / g.coef)
        return super().germ(g)

    def inverse(self, w):
        w = _arr(w) - self.c
        if self.b == 0:
            return w / self.a
        disc = np.sqrt(w * w - 4 * self.a * self.b)
        r1 = (w + disc) / (2 * self.a)
        r2 = (w - disc) / (2 * self.a)
        big = np.abs(r1) >= np.abs(r2)
        if self.branch == "exterior":
            return np.where(big, r1, r2)
        return np.where(big, r2, r1)

    def coefficients(self):
        return [self.a, self.b, self.c]


@dataclass
class Explicit(Primitive):
    """Named closed-form map given by callables (finite germs only)."""

    label: str
    params: dict
    f: Callable = field(repr=False)
    df: Callable = field(repr=False)
    finv: Optional[Callable] = field(default=None, repr=False)
    name = "explicit"

    def __call__(self, z):
        return self.f(_arr(z))

    def deriv(self, z):
        return self.df(_arr(z))

    def inverse(self, w):
        if self.finv is None:
            raise NotImplementedError(f"{self.label} has no closed-form inverse")
        return self.finv(_arr(w))

    @property
    def has_inverse(self):
        return self.finv is not None

    def coefficients(self):
        return [self.label] + [[k, v] for k, v in sorted(self.params.items())]


@dataclass
class ConformalMap:
    """Ordered chain of primitives applied left to right."""

    chain: list
    domain_tag: str = "disk"
    range_tag: str = "plane"

    def __call__(self, z):
        z = _arr(z)
        for i, p in enumerate(self.chain):
            bad = ~p.valid(z)
            if np.any(bad):
                raise DomainError("point on a branch cut", i)
            z = p(z)
        return z

    def deriv(self, z):
        z = _arr(z)
        out = np.ones(z.shape, complex)
        for p in self.chain:
            out = out * p.deriv(z)
            z = p(z)
        return out

    def germ(self, g: Germ) -> Germ:
        for p in self.chain:
            g = p.germ(g)
        return g

    @property
    def has_inverse(self) -> bool:
        return all(p.has_inverse for p in self.chain)

    def inverse(self, w, guess=None, tol: float = 1e-13, maxiter: int = 60):
        w = _arr(w)
        if self.has_inverse:
            for p in reversed(self.chain):
                w = p.inverse(w)
            return w
        if guess is None:
            raise NumericError("chain has no closed-form inverse and no initial guess")
        return newton_inverse(self, w, guess, tol, maxiter)

    def then(self, other: "ConformalMap") -> "ConformalMap":
        return ConformalMap(self.chain + other.chain, self.domain_tag, other.range_tag)

    def describe(self) -> list:
        return [p.describe() for p in self.chain]


def newton_inverse(f, w, guess, tol=1e-13, maxiter=60, clamp: Optional[Callable] = None):
    """Solve f(z) = w by damped Newton iteration, vectorized."""
    w = _arr(w)
    z = np.array(np.broadcast_to(_arr(guess), w.shape), complex)
    for _ in range(maxiter):
        r = f(z) - w
        dz = r / f.deriv(z)
        z_new = z - dz
        if clamp is not None:
            z_new = clamp(z_new, z)
        z = z_new
        if np.all(np.abs(dz) <= tol * np.maximum(1.0, np.abs(z))):
            return z
    if np.all(np.abs(f(z) - w) <= 1e-9 * np.maximum(1.0, np.abs(w))):
        return z
    raise NumericError("Newton inversion did not converge")


def eval_map(f, z):
    """Apply a chain (or RiemannMap) to ``z``."""
    return f(z)
