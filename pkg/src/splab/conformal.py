"""Conformal maps f(z) = h(z)·exp(-i/z) through their derivative ratios.

The map f itself is never represented: exp(-i/z) has an essential
singularity at the expansion point, so f(iε) is not a Laurent series.
Every quantity needed downstream (Bell polynomials of f, Schwarzians,
derivative factors) is a ratio in which the essential factor cancels
identically. The module therefore stores

* the logarithmic derivative  L = f'/f = h'/h + i/z², and
* the normalized derivatives  R_n = f^(n)/f,

both as honest Laurent series in ε on the ray z = iε, related by

    R_0 = 1,   R_{n+1} = R_n · L + dR_n/dz.

Two conventions are fixed here. First, f(0) is the directional limit along
z = iε with ε -> 0+, which is 0 for the essential-factor class, so
(f - f(0)) is identified with f. Second, h_coeffs is read as an exact
polynomial: builtins generate enough Taylor coefficients for the window
they are asked for, and user-supplied coefficient files are taken at face
value to all orders.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .cache import CACHE
from .gaussian import MINUS_I, GaussianRational, i_pow
from .laurent import INF, LaurentSeries

BUILTIN_NAMES = ("one", "cos")


@dataclass(frozen=True)
class MapSpec:
    """A conformal map given by the Taylor coefficients of its regular part.

    ``h_coeffs[k]`` is the coefficient of z^k in h. With
    ``has_essential_factor`` set, the map is h(z)·exp(-i/z); otherwise it is
    the plain series map h(z), used for Möbius and composition property
    tests. Maps of the essential class must have h(0) != 0.
    """

    name: str
    h_coeffs: tuple
    has_essential_factor: bool = True

    def __post_init__(self):
        if not self.h_coeffs:
            raise ValueError("h_coeffs must be nonempty")
        if all(c.is_zero for c in self.h_coeffs):
            raise ValueError("h must not be identically zero")
        if self.has_essential_factor and self.h_coeffs[0].is_zero:
            raise ValueError("essential-factor maps require h(0) != 0")

    def key(self) -> tuple:
        return (
            self.name,
            self.has_essential_factor,
            tuple((str(c.re), str(c.im)) for c in self.h_coeffs),
        )

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "essential": self.has_essential_factor,
            "h_coeffs": [c.to_json() for c in self.h_coeffs],
        }

    @classmethod
    def from_json(cls, obj) -> "MapSpec":
        return cls(
            name=obj["name"],
            h_coeffs=tuple(GaussianRational.from_json(c) for c in obj["h_coeffs"]),
            has_essential_factor=bool(obj["essential"]),
        )


def builtin_map(name: str, order: int = 8) -> MapSpec:
    """A builtin map with h-coefficients adequate for windows up to ``order``.

    "one" is h = 1 (exact). "cos" is the cosine Taylor polynomial carried
    far enough that every series computed at truncation <= order agrees
    with the true cosine map.
    """
    if name == "one":
        return MapSpec("one", (GaussianRational(1),), True)
    if name == "cos":
        degree = max(order + 2, 6)
        coeffs = []
        for k in range(degree + 1):
            if k % 2:
                coeffs.append(GaussianRational(0))
            else:
                coeffs.append(GaussianRational(Fraction((-1) ** (k // 2), factorial(k))))
        return MapSpec("cos", tuple(coeffs), True)
    raise ValueError(f"unknown builtin map {name!r}")


def load_map_spec(path) -> MapSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return MapSpec.from_json(json.load(fh))


def save_map_spec(ms: MapSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ms.to_json(), fh, sort_keys=True, indent=2)


def resolve_map(spec: str, order: int) -> MapSpec:
    """Builtin name or h-spec file path -> MapSpec usable through ``order``."""
    if spec in BUILTIN_NAMES:
        return builtin_map(spec, order)
    return load_map_spec(spec)


def h_at_ieps(ms: MapSpec) -> LaurentSeries:
    """h evaluated on the ray z = iε: z^k contributes i^k ε^k, exactly."""
    return LaurentSeries.make(
        ((k, i_pow(k) * c) for k, c in enumerate(ms.h_coeffs) if not c.is_zero),
        INF,
    )


def log_derivative(ms: MapSpec, trunc: int) -> LaurentSeries:
    """L = f'/f as a Laurent series with truncation exactly ``trunc``.

    For the essential-factor class the i/z² piece contributes the single
    exact term -i·ε^{-2}; the rest is the series quotient h'/h.
    """

    def compute():
        h = h_at_ieps(ms)
        hp = h.diff_z()
        if hp.is_zero:
            ratio = LaurentSeries.zero()
        else:
            lead = hp.lead_degree()
            ratio = hp * h.invert(trunc=trunc - lead)
        if ms.has_essential_factor:
            ratio = ratio + LaurentSeries.make([(-2, MINUS_I)], INF)
        return ratio.restrict(trunc)

    return CACHE.get_or_compute((ms.key(), "L", trunc), compute)


def derivative_ratio(ms: MapSpec, n: int, trunc: int) -> LaurentSeries:
    """R_n = f^(n)/f with truncation exactly ``trunc`` (memoized)."""
    if n < 0:
        raise ValueError("derivative order must be >= 0")
    if n == 0:
        return LaurentSeries.constant(1)

    def compute():
        ell = log_derivative(ms, trunc + 2 * n)
        r = ell
        for _ in range(n - 1):
            r = r * ell + r.diff_z()
        return r.restrict(trunc)

    return CACHE.get_or_compute((ms.key(), "R", n, trunc), compute)
