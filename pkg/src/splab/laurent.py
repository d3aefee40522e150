"""Truncated Laurent series in the real regulator ε.

A LaurentSeries stores a sparse map {degree: GaussianRational} together with
a truncation order ``trunc``: coefficients at degrees > trunc are *unknown*,
not zero. Degrees may be negative. Every ring operation propagates the
truncation conservatively:

* add / sub:  trunc = min(T1, T2)
* mul:        trunc = min(T1 + lead2, T2 + lead1)

where lead is the smallest degree that could carry a nonzero coefficient
(the smallest stored degree, or trunc+1 for a series with no stored terms).
Reading a coefficient beyond the window raises TruncationInsufficientError
instead of returning a silent zero. The partition numbers computed
downstream hinge on single coefficients, so "unknown" must never be
conflated with "zero".

Exactly known series (constants, lifted polynomials) carry trunc = +inf.

The variable of record is ε with the evaluation point z = iε, so the
z-derivative carries a Jacobian: d/dz = -i d/dε. It is exposed as the
distinct operation :meth:`LaurentSeries.diff_z`.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .gaussian import ZERO, GaussianRational

INF = math.inf

_SCALARS = (int, Fraction, GaussianRational)


class TruncationInsufficientError(Exception):
    """A coefficient was requested beyond a series' validity window."""

    def __init__(self, degree, trunc):
        super().__init__(
            f"coefficient at degree {degree} requested, window ends at {trunc}"
        )
        self.degree = degree
        self.trunc = trunc


class SingularRatioError(Exception):
    """Inversion of a series with no known nonzero leading coefficient."""


def _as_coeff(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    return GaussianRational(x)


class LaurentSeries:
    """Sparse truncated Laurent series over GaussianRational.

    Canonical form: no stored coefficient is zero and every stored degree
    is <= trunc. Instances are treated as immutable.
    """

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: dict, trunc):
        self.coeffs = coeffs
        self.trunc = trunc

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, terms, trunc) -> "LaurentSeries":
        """Build a series from (degree, coefficient) pairs.

        Degrees above trunc are rejected; zero coefficients are dropped.
        """
        coeffs: dict = {}
        for degree, value in terms:
            if degree > trunc:
                raise ValueError(f"degree {degree} beyond truncation {trunc}")
            c = _as_coeff(value)
            if degree in coeffs:
                c = coeffs[degree] + c
            if c.is_zero:
                coeffs.pop(degree, None)
            else:
                coeffs[degree] = c
        return cls(coeffs, trunc)

    @classmethod
    def constant(cls, value) -> "LaurentSeries":
        """An exactly known constant (trunc = +inf)."""
        c = _as_coeff(value)
        return cls({} if c.is_zero else {0: c}, INF)

    @classmethod
    def zero(cls, trunc=INF) -> "LaurentSeries":
        return cls({}, trunc)

    # -- inspection ----------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        """True if no nonzero coefficient is stored (zero on the window)."""
        return not self.coeffs

    @property
    def is_exact_zero(self) -> bool:
        return not self.coeffs and self.trunc == INF

    def lead_degree(self):
        """Smallest stored degree, or None for a window-zero series."""
        return min(self.coeffs) if self.coeffs else None

    def _eff_lead(self):
        # smallest degree that could carry a nonzero coefficient
        if self.coeffs:
            return min(self.coeffs)
        return self.trunc + 1 if self.trunc != INF else INF

    def coeff(self, degree: int) -> GaussianRational:
        """Exact coefficient at ``degree``; raises beyond the window."""
        if degree > self.trunc:
            raise TruncationInsufficientError(degree, self.trunc)
        return self.coeffs.get(degree, ZERO)

    def restrict(self, trunc: int) -> "LaurentSeries":
        """Narrow the window to exactly ``trunc`` (must already cover it)."""
        if self.trunc < trunc:
            raise TruncationInsufficientError(trunc, self.trunc)
        if self.trunc == trunc:
            return self
        return LaurentSeries(
            {d: c for d, c in self.coeffs.items() if d <= trunc}, trunc
        )

    # -- ring operations ------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentSeries):
            return other
        if isinstance(other, _SCALARS):
            return LaurentSeries.constant(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        trunc = min(self.trunc, o.trunc)
        coeffs = {d: c for d, c in self.coeffs.items() if d <= trunc}
        for d, c in o.coeffs.items():
            if d > trunc:
                continue
            s = coeffs.get(d)
            s = c if s is None else s + c
            if s.is_zero:
                coeffs.pop(d, None)
            else:
                coeffs[d] = s
        return LaurentSeries(coeffs, trunc)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return LaurentSeries({d: -c for d, c in self.coeffs.items()}, self.trunc)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        trunc = min(self.trunc + o._eff_lead(), o.trunc + self._eff_lead())
        if not self.coeffs or not o.coeffs:
            return LaurentSeries({}, trunc)
        coeffs: dict = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in o.coeffs.items():
                d = d1 + d2
                if d > trunc:
                    continue
                p = c1 * c2
                s = coeffs.get(d)
                s = p if s is None else s + p
                if s.is_zero:
                    coeffs.pop(d, None)
                else:
                    coeffs[d] = s
        return LaurentSeries(coeffs, trunc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("negative powers: invert first")
        out = LaurentSeries.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def invert(self, trunc=None) -> "LaurentSeries":
        """Multiplicative inverse up to the propagated window.

        For a series with leading degree d and window width w = trunc - d,
        the inverse has leading degree -d and the same width, i.e. its
        truncation is trunc - 2d. Exactly known input (trunc = +inf) needs
        an explicit output truncation.
        """
        if not self.coeffs:
            raise SingularRatioError("cannot invert a window-zero series")
        d = min(self.coeffs)
        lead = self.coeffs[d]
        if self.trunc == INF:
            if trunc is None:
                raise ValueError("inverting an exact series needs an explicit trunc")
            out_trunc = trunc
        else:
            out_trunc = self.trunc - 2 * d
            if trunc is not None:
                out_trunc = min(out_trunc, trunc)
        width = out_trunc + d  # number of tail coefficients after degree -d
        inv_lead = 1 / lead
        tail = [inv_lead]
        for m in range(1, width + 1):
            acc = None
            for i in range(1, m + 1):
                a = self.coeffs.get(d + i)
                if a is None:
                    continue
                p = a * tail[m - i]
                acc = p if acc is None else acc + p
            tail.append(ZERO if acc is None else -(inv_lead * acc))
        return LaurentSeries.make(
            ((-d + m, c) for m, c in enumerate(tail)), out_trunc
        )

    def diff_z(self) -> "LaurentSeries":
        """Derivative with respect to z where z = iε, i.e. -i d/dε.

        Degree d maps to d-1 with the coefficient scaled by -i*d; the
        truncation drops by one.
        """
        coeffs = {}
        for d, c in self.coeffs.items():
            if d == 0:
                continue
            coeffs[d - 1] = c * GaussianRational(0, -d)
        return LaurentSeries(coeffs, self.trunc - 1 if self.trunc != INF else INF)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.coeffs == other.coeffs

    def matches(self, other: "LaurentSeries", floor=None) -> bool:
        """Equality of coefficients on the common validity window.

        With ``floor`` given, additionally require the common window to
        reach at least that degree (guards against vacuous agreement).
        """
        common = min(self.trunc, other.trunc)
        if floor is not None and common < floor:
            return False
        for d, c in self.coeffs.items():
            if d <= common and other.coeffs.get(d, ZERO) != c:
                return False
        for d, c in other.coeffs.items():
            if d <= common and self.coeffs.get(d, ZERO) != c:
                return False
        return True

    # -- presentation / serialization -------------------------------------------

    def __str__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for d in sorted(self.coeffs):
                c = self.coeffs[d]
                if d == 0:
                    parts.append(f"({c})")
                else:
                    parts.append(f"({c})*e^{d}")
            body = " + ".join(parts)
        t = "inf" if self.trunc == INF else str(self.trunc)
        return f"{body} [trunc {t}]"

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "terms": [[d, self.coeffs[d].to_json()] for d in sorted(self.coeffs)],
            "trunc": None if self.trunc == INF else self.trunc,
        }

    @classmethod
    def from_json(cls, obj) -> "LaurentSeries":
        trunc = INF if obj["trunc"] is None else obj["trunc"]
        return cls.make(
            ((d, GaussianRational.from_json(c)) for d, c in obj["terms"]), trunc
        )
