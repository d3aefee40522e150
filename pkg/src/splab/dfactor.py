"""Derivative factors D(n) of the transformed correlator.

D(n) is the zero-mode residue a derivative of order n leaves behind under
the map: an alternating factorial-weighted sum of the map's Bell-polynomial
ratios,

    D(n) = -i Σ_{k=1}^{n} (-1)^(k+1) k! · B_{n|k}(f;z) / f^k.

(f - f(0)) is identified with f per the conformal module's limit
convention. The most singular term comes from k = n and sits at degree
-2n; for h = 1 the least singular term of D(n)/n! is (i/ε)^(n+1).
"""

from __future__ import annotations

from .bell import bell_of_map
from .cache import CACHE
from .conformal import MapSpec
from .gaussian import MINUS_I
from .laurent import LaurentSeries


def dfactor(ms: MapSpec, n: int, trunc: int) -> LaurentSeries:
    """D(n) as a Laurent series with truncation exactly ``trunc``."""
    if n < 1:
        raise ValueError("derivative factor order must be >= 1")

    def compute():
        total = LaurentSeries.zero()
        fact = 1
        for k in range(1, n + 1):
            fact *= k
            sign = fact if k % 2 else -fact
            total = total + sign * bell_of_map(ms, n, k, trunc)
        return (MINUS_I * total).restrict(trunc)

    return CACHE.get_or_compute((ms.key(), "D", n, trunc), compute)
