"""Independent number-theoretic ground truth for partition counts.

Exact integer tables come from two cross-checking routes (a recurrence and
a generating-function expansion) plus brute-force enumeration at small N.
Floating-point asymptotics (Hardy-Ramanujan, Rademacher with Dedekind-sum
phases) live here too; they are the only floats in the package.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass


@dataclass
class PartitionTable:
    """Triangular table of λ(N|k) for 0 <= k <= N <= nmax, exact integers."""

    nmax: int
    rows: list  # rows[N][k]

    def get(self, N: int, k: int) -> int:
        if not (0 <= N <= self.nmax):
            raise ValueError(f"N={N} outside table (nmax={self.nmax})")
        if k < 0:
            raise ValueError("k must be >= 0")
        if k > N:
            return 0
        return self.rows[N][k]

    def total(self, N: int) -> int:
        """λ(N), the row sum."""
        return sum(self.rows[N])

    def to_csv(self) -> str:
        header = "N," + ",".join(str(k) for k in range(1, self.nmax + 1))
        lines = [header]
        for N in range(1, self.nmax + 1):
            cells = [str(self.get(N, k)) for k in range(1, self.nmax + 1)]
            lines.append(f"{N}," + ",".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "nmax": self.nmax,
            "rows": [list(row) for row in self.rows],
        }


def dp_restricted(nmax: int) -> PartitionTable:
    """λ(N|k) by the recurrence λ(N|k) = λ(N-1|k-1) + λ(N-k|k).

    A partition of N into k parts either contains a 1 (strip it) or has
    all parts >= 2 (lower every part by one). λ(0|0) = 1 seeds the table.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    rows = [[0] * (N + 1) for N in range(nmax + 1)]
    rows[0][0] = 1
    for N in range(1, nmax + 1):
        for k in range(1, N + 1):
            val = rows[N - 1][k - 1]
            if N - k >= k:
                val += rows[N - k][k]
            rows[N][k] = val
    return PartitionTable(nmax, rows)


def gf_expand(nmax: int) -> PartitionTable:
    """λ(N|k) as coefficients of Π_{n>=1} 1/(1 - y xⁿ), truncated at x^nmax.

    The table is asserted identical to the recurrence table before being
    returned; the two computations share nothing but the answer.
    """
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    # coeff[N][k] of the partial product, x truncated at nmax, y at nmax
    coeff = [[0] * (nmax + 1) for _ in range(nmax + 1)]
    coeff[0][0] = 1
    for n in range(1, nmax + 1):
        # multiply by 1/(1 - y xⁿ) = Σ_j y^j x^(n j)
        updated = [row[:] for row in coeff]
        for N in range(n, nmax + 1):
            for k in range(1, nmax + 1):
                updated[N][k] += updated[N - n][k - 1]
        coeff = updated
    rows = [[coeff[N][k] for k in range(N + 1)] for N in range(nmax + 1)]
    table = PartitionTable(nmax, rows)
    reference = dp_restricted(nmax)
    assert table.rows == reference.rows, "generating function disagrees with recurrence"
    return table


def brute_force_partitions(N: int):
    """Explicit enumeration: (list of nondecreasing tuples, counts by length).

    Exponential; refuses N > 25.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if N > 25:
        raise ValueError("brute force enumeration capped at N = 25")
    parts = []

    def rec(remaining, minimum, acc):
        if remaining == 0:
            parts.append(tuple(acc))
            return
        for part in range(minimum, remaining + 1):
            acc.append(part)
            rec(remaining - part, part, acc)
            acc.pop()

    rec(N, 1, [])
    counts: dict = {}
    for p in parts:
        counts[len(p)] = counts.get(len(p), 0) + 1
    return parts, counts


def hardy_ramanujan(N: int) -> float:
    """Leading asymptotic estimate of λ(N): e^(π√(2N/3)) / (4N√3)."""
    if N < 1:
        raise ValueError("N must be >= 1")
    return math.exp(math.pi * math.sqrt(2 * N / 3)) / (4 * N * math.sqrt(3))


def dedekind_sum(m: int, n: int) -> float:
    """s(m, n) = (1/4n) Σ_{k=1}^{n-1} cot(πk/n) cot(πkm/n), coprime inputs.

    m = 0 is admitted only with n = 1 (the empty sum).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0 <= m < n or (m == 0 and n == 1)):
        raise ValueError("need 0 <= m < n")
    if math.gcd(m, n) != 1:
        raise ValueError(f"s(m,n) needs coprime arguments, got ({m},{n})")
    total = 0.0
    for k in range(1, n):
        a = math.pi * k / n
        b = math.pi * k * m / n
        total += (math.cos(a) / math.sin(a)) * (math.cos(b) / math.sin(b))
    return total / (4 * n)


def _alpha(n: int, N: int) -> float:
    # phase sum over residues m coprime to n (m = 0 only for n = 1)
    total = 0 + 0j
    for m in range(n):
        if m == 0 and n > 1:
            continue
        if math.gcd(m, n) != 1:
            continue
        total += cmath.exp(1j * math.pi * (dedekind_sum(m, n) - 2.0 * N * m / n))
    return total.real


def rademacher(N: int, terms: int) -> float:
    """Partial sum of the convergent series for λ(N).

    The N-derivative of sinh(c√x)/√x (x = N - 1/24, c = (π/n)√(2/3)) is
    taken in closed form: c·cosh(c√x)/(2x) - sinh(c√x)/(2x^(3/2)).
    """
    if N < 1 or terms < 1:
        raise ValueError("need N >= 1 and terms >= 1")
    x = N - 1.0 / 24.0
    sqrt_x = math.sqrt(x)
    total = 0.0
    for n in range(1, terms + 1):
        c = (math.pi / n) * math.sqrt(2.0 / 3.0)
        deriv = c * math.cosh(c * sqrt_x) / (2 * x) - math.sinh(c * sqrt_x) / (
            2 * x ** 1.5
        )
        total += math.sqrt(n) * _alpha(n, N) * deriv
    return total / (math.pi * math.sqrt(2.0))
