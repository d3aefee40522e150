"""The analytic partition-number formula: term enumeration and ε-ordering.

λ(N|Q) is assembled as a finite sum of monomials. Each monomial is described
by a TermDescriptor:

* a split N = N1 + N2,
* a multiplicity vector m over derivative orders with Σ j·m_j = N1, fully
  Wick-paired by a symmetric matrix ν (2ν_jj + Σ_{i≠j} ν_ij = m_j, with no
  pairings against the vertex: the essential factor kills those),
* a multiset {n: p_n} of derivative factors with Σ n·p_n = N2 and
  Σ p_n = Q.

The monomial value is  weight · Π_{i<=j} S_{i|j}^{ν_ij} · Π_n D(n)^{p_n},
with the exact rational weight

    Π_i  m_i! / (2^{ν_ii} ν_ii! Π_{j>i} ν_ij!)   ·   Π_n (1/n!)^{p_n}

(the standard Wick pairing count times the per-order factorial of the
vertex expansion). ε-ordering then extracts the finite part: the
coefficient of ε^{-(N+Q)} times (-i)^{N+Q}. The total must come out a
nonnegative real integer; anything else aborts loudly with the per-term
breakdown attached, because it means a convention was violated upstream.

Window policy: every factor is evaluated with window width 2(N+Q)+4 beyond
its leading degree (rounded up to keep memo reuse high); if a coefficient
read still lands outside a window, the width is doubled and the evaluation
retried, at most three times.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from ._combin import partitions_all, partitions_exact
from .bell import schwarzian_general
from .conformal import MapSpec
from .dfactor import dfactor
from .gaussian import GaussianRational, i_pow
from .laurent import LaurentSeries, TruncationInsufficientError


class ConventionViolationError(Exception):
    """The assembled λ(N|Q) was not a real integer."""

    def __init__(self, message, breakdown=None):
        super().__init__(message)
        self.breakdown = breakdown


@dataclass(frozen=True)
class TermDescriptor:
    """One monomial of the analytic formula.

    ``m`` is a tuple of (order, multiplicity), ``nu`` a tuple of
    (i, j, count) with i <= j, ``d`` a tuple of (order, power). All tuples
    are sorted, so descriptors compare and hash canonically.
    """

    N1: int
    N2: int
    m: tuple
    nu: tuple
    d: tuple

    def sort_key(self):
        return (self.N1, self.m, self.nu, self.d)

    def validate(self):
        assert self.N1 >= 0 and self.N2 >= 0
        assert sum(j * mj for j, mj in self.m) == self.N1
        degree = {j: 0 for j, _ in self.m}
        for i, j, v in self.nu:
            assert i <= j and v > 0
            if i == j:
                degree[i] += 2 * v
            else:
                degree[i] += v
                degree[j] += v
        for j, mj in self.m:
            assert degree[j] == mj, "pairing does not saturate the operators"
        assert all(p >= 1 for _, p in self.d)
        assert sum(n * p for n, p in self.d) == self.N2

    def label(self) -> str:
        parts = [f"S_{i}|{j}" + (f"^{v}" if v > 1 else "") for i, j, v in self.nu]
        parts += [f"D({n})" + (f"^{p}" if p > 1 else "") for n, p in self.d]
        return "·".join(parts) if parts else "1"

    def to_json(self) -> dict:
        return {
            "N1": self.N1,
            "N2": self.N2,
            "m": [list(t) for t in self.m],
            "nu": [list(t) for t in self.nu],
            "d": [list(t) for t in self.d],
        }


@dataclass
class TermValue:
    """A fully evaluated monomial: descriptor, weight, series, finite part."""

    descriptor: TermDescriptor
    weight: GaussianRational
    series: LaurentSeries
    contribution: GaussianRational

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor.to_json(),
            "label": self.descriptor.label(),
            "weight": str(self.weight.re),
            "contribution": self.contribution.to_json(),
        }


def _pairings(m: dict):
    """All symmetric pairing matrices saturating the multiplicity vector m.

    Yields dicts {(i, j): count} with i <= j. Orders are processed in
    increasing order; at each step the remaining degree of the current
    order is split between self-pairings and partners of higher order.
    """
    orders = sorted(m)

    def rec(idx, remaining, current):
        if idx == len(orders):
            yield dict(current)
            return
        j = orders[idx]
        r = remaining[j]

        def distribute(partners, left):
            if not partners:
                if left == 0:
                    yield from rec(idx + 1, remaining, current)
                return
            jp = partners[0]
            cap = min(left, remaining[jp])
            for take in range(cap + 1):
                if take:
                    current[(j, jp)] = take
                    remaining[jp] -= take
                yield from distribute(partners[1:], left - take)
                if take:
                    del current[(j, jp)]
                    remaining[jp] += take

        partners = [jp for jp in orders[idx + 1 :] if remaining[jp] > 0]
        for self_pairs in range(r // 2 + 1):
            rest = r - 2 * self_pairs
            if self_pairs:
                current[(j, j)] = self_pairs
            yield from distribute(partners, rest)
            if self_pairs:
                current.pop((j, j), None)

    yield from rec(0, dict(m), {})


def enumerate_terms(N: int, Q: int):
    """All TermDescriptors for λ(N|Q), sorted canonically.

    Multiplicity vectors admitting no full pairing (an odd leftover
    anywhere) produce no descriptor. The list is duplicate-free by
    construction: the (m, ν) enumeration and the partition generator each
    emit canonical forms exactly once.
    """
    if N < 1 or not (1 <= Q <= N):
        raise ValueError("need N >= 1 and 1 <= Q <= N")
    out = []
    for n1 in range(N + 1):
        n2 = N - n1
        d_parts = [
            tuple(sorted(part.items())) for part in partitions_exact(n2, Q)
        ]
        if not d_parts:
            continue
        if n1 == 0:
            s_parts = [((), ())]
        else:
            s_parts = []
            for m in partitions_all(n1):
                for nu in _pairings(m):
                    s_parts.append(
                        (
                            tuple(sorted(m.items())),
                            tuple(sorted((i, j, v) for (i, j), v in nu.items())),
                        )
                    )
        for m_t, nu_t in s_parts:
            for d_t in d_parts:
                out.append(TermDescriptor(N1=n1, N2=n2, m=m_t, nu=nu_t, d=d_t))
    out.sort(key=TermDescriptor.sort_key)
    return out


def term_weight(td: TermDescriptor) -> GaussianRational:
    """Exact positive rational weight of a monomial."""
    weight = Fraction(1)
    nu_map = {(i, j): v for i, j, v in td.nu}
    for i, mi in td.m:
        denom = 1
        vii = nu_map.get((i, i), 0)
        denom *= 2 ** vii * factorial(vii)
        for (a, b), v in nu_map.items():
            if a == i and b > i:
                denom *= factorial(v)
        weight *= Fraction(factorial(mi), denom)
    for n, p in td.d:
        weight *= Fraction(1, factorial(n)) ** p
    return GaussianRational(weight)


def _round_up8(x: int) -> int:
    return -((-x) // 8) * 8


def _factor_trunc(lead_estimate: int, window: int) -> int:
    # requested window width beyond the factor's leading degree, rounded up
    # so different (N, Q) land on shared memo entries
    return _round_up8(lead_estimate + window)


def evaluate_term(td: TermDescriptor, ms: MapSpec, window: int) -> LaurentSeries:
    """weight · Π S_{i|j}^{ν_ij} · Π D(n)^{p_n} as a Laurent series."""
    series = LaurentSeries.constant(term_weight(td))
    for i, j, v in td.nu:
        s = schwarzian_general(ms, i, j, _factor_trunc(-(i + j + 2), window))
        series = series * s ** v
    for n, p in td.d:
        series = series * dfactor(ms, n, _factor_trunc(-2 * n, window)) ** p
    return series


def epsilon_order(series: LaurentSeries, order: int) -> GaussianRational:
    """Finite part of (-iε)^order · series as ε -> 0.

    Extracts the coefficient of ε^(-order) and multiplies by (-i)^order;
    raises TruncationInsufficientError if the window does not cover it.
    """
    return i_pow(-order) * series.coeff(-order)


def default_window(N: int, Q: int) -> int:
    return 2 * (N + Q) + 4


def lambda_breakdown(
    ms: MapSpec, N: int, Q: int, window=None, _weight_hook=None
):
    """Evaluate every monomial of λ(N|Q): returns (terms, total, window).

    ``_weight_hook`` is a test hook: it maps (index, weight) to a replacement
    weight and exists so the verification CLI can demonstrate its failure
    path on deliberately corrupted input.
    """
    descriptors = enumerate_terms(N, Q)
    w = window if window is not None else default_window(N, Q)
    last_error = None
    for _attempt in range(4):
        try:
            terms = []
            for idx, td in enumerate(descriptors):
                weight = term_weight(td)
                series = evaluate_term(td, ms, w)
                contribution = epsilon_order(series, N + Q)
                if _weight_hook is not None:
                    hooked = _weight_hook(idx, weight)
                    if hooked != weight:
                        contribution = contribution * (hooked / weight)
                        weight = hooked
                terms.append(TermValue(td, weight, series, contribution))
            total = GaussianRational(0)
            for tv in terms:
                total = total + tv.contribution
            return terms, total, w
        except TruncationInsufficientError as err:
            last_error = err
            w *= 2
    raise RuntimeError(
        f"window retries exhausted for λ({N}|{Q}) at width {w}: {last_error}"
    )


def lambda_cft(N: int, Q: int, ms: MapSpec, window=None) -> int:
    """λ(N|Q) through the analytic formula; exact integer or loud failure."""
    if Q == 0:
        return 1 if N == 0 else 0
    terms, total, _w = lambda_breakdown(ms, N, Q, window=window)
    if not total.is_real or total.re.denominator != 1:
        raise ConventionViolationError(
            f"λ({N}|{Q}) evaluated to non-integer {total}",
            breakdown=[tv.to_json() for tv in terms],
        )
    return int(total.re)


def breakdown_record(ms: MapSpec, N: int, Q: int, window=None, _weight_hook=None):
    """JSON-ready per-term record used by the CLI and the verifier."""
    terms, total, w = lambda_breakdown(
        ms, N, Q, window=window, _weight_hook=_weight_hook
    )
    return {
        "N": N,
        "Q": Q,
        "h": ms.name,
        "window": w,
        "terms": [tv.to_json() for tv in terms],
        "lambda": str(total),
    }


def breakdown_json(record) -> str:
    return json.dumps(record, sort_keys=True, indent=2)
