"""Incomplete Bell polynomials and generalized Schwarzians of a map.

The generalized Schwarzian S_{n1|n2} is the operator-independent part of
the transformed normal-ordered bilinear of derivative orders n1, n2. Two
independent evaluators are provided:

* :func:`schwarzian_general` evaluates the closed constrained multi-sum in
  derivatives of map Bell polynomials. The multi-sum is used in the reading
  that is forced by consistency with point splitting: overall sign
  (-1)^(k1+1+m2+q), factorial weight (k1+k2+q-1)!, and a q = 0 term (with
  B_{0|0} = 1) admitted at p = 0. Under this reading (1,1) reduces exactly
  to the ordinary Schwarzian in the 1/6, 1/12 normalization.

* :func:`schwarzian_point_split` regularizes the coincident-point product
  by separating the arguments by δ, subtracting the flat-space pole and
  extracting the δ⁰ part. It is self-validating: all δ-pole coefficients
  must cancel exactly, and a failed cancellation aborts rather than being
  absorbed. Shifted quantities are built from exp of the finite series
  u(z±δ/2) - u(z) with u = log f, so every power of f cancels before
  anything is evaluated.

Everything here works on f-free ratios (see conformal): the Bell polynomial
of the map enters only through B_{n|k}(f;z)/f^k, which equals the generic
Bell polynomial in the derivative ratios R_1 ... R_{n-k+1}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import comb, factorial

from ._combin import partitions_exact
from .cache import CACHE
from .conformal import MapSpec, derivative_ratio, h_at_ieps, log_derivative
from .gaussian import MINUS_I, GaussianRational
from .laurent import INF, LaurentSeries, TruncationInsufficientError


class PoleCancellationError(Exception):
    """A δ-pole survived point splitting: a convention is wrong somewhere."""


# ---------------------------------------------------------------------------
# generic Bell polynomials
# ---------------------------------------------------------------------------

def bell_generic(n: int, k: int, args, one=1):
    """Incomplete Bell polynomial B_{n|k}(g_1, ..., g_{n-k+1}).

    Works over any commutative ring: ``args`` may hold GaussianRational,
    LaurentSeries, or any type supporting + and * with integer scalars.
    ``one`` supplies the ring unit for the empty case B_{0|0} = 1.

    B_{n|k} = n! · Σ  Π_j (g_j/j!)^{p_j} / p_j!   over p >= 0 with
    Σ p_j = k and Σ j·p_j = n. Each summand's rational weight is the
    integer n! / Π_j (j!^{p_j} p_j!).
    """
    if n < 0 or k < 0:
        raise ValueError("Bell indices must be >= 0")
    if k == 0:
        return one if n == 0 else one * 0
    if k > n:
        return one * 0
    need = n - k + 1
    if len(args) < need:
        raise ValueError(f"need {need} arguments for B_{n}|{k}, got {len(args)}")
    total = None
    for part in partitions_exact(n, k):
        denom = 1
        for j, p in part.items():
            denom *= factorial(j) ** p * factorial(p)
        weight, rem = divmod(factorial(n), denom)
        assert rem == 0
        factors = []
        for j in sorted(part):
            factors.extend([args[j - 1]] * part[j])
        term = weight * reduce(lambda a, b: a * b, factors)
        total = term if total is None else total + term
    return total if total is not None else one * 0


def complete_bell(n: int, args, one=1):
    """Σ_k B_{n|k}(g): the complete Bell polynomial."""
    total = one if n == 0 else one * 0
    for k in range(1, n + 1):
        total = total + bell_generic(n, k, args, one=one)
    return total


def bell_of_map(ms: MapSpec, n: int, k: int, trunc: int) -> LaurentSeries:
    """B_{n|k}(f;z) / f^k as a Laurent series with truncation ``trunc``.

    Every monomial of the map Bell polynomial is a product of exactly k
    derivatives of f summing to order n, so dividing by f^k replaces each
    ∂^j f by the ratio R_j.
    """
    if not (1 <= k <= n):
        raise ValueError("bell_of_map needs 1 <= k <= n")

    def compute():
        inner = trunc + 2 * n
        ratios = [derivative_ratio(ms, j, inner) for j in range(1, n - k + 2)]
        value = bell_generic(n, k, ratios, one=LaurentSeries.constant(1))
        return value.restrict(trunc)

    return CACHE.get_or_compute((ms.key(), "B", n, k, trunc), compute)


# ---------------------------------------------------------------------------
# Schwarzians
# ---------------------------------------------------------------------------

def schwarzian_11(ms: MapSpec, trunc: int) -> LaurentSeries:
    """The ordinary Schwarzian, (1/6)(f''/f')' - (1/12)(f''/f')²."""

    def compute():
        inner = trunc + 8
        r1 = derivative_ratio(ms, 1, inner)
        r2 = derivative_ratio(ms, 2, inner)
        w = r2 * r1.invert()
        s = Fraction(1, 6) * w.diff_z() - Fraction(1, 12) * (w * w)
        return s.restrict(trunc)

    return CACHE.get_or_compute((ms.key(), "S11", trunc), compute)


def schwarzian_general(ms: MapSpec, n1: int, n2: int, trunc: int) -> LaurentSeries:
    """Generalized Schwarzian S_{n1|n2} via the constrained multi-sum.

    Structure: for k1 <= n1, k2 <= n2 and m1 + m2 + p = k1 + k2,

        (-1)^(k1+1+m2+q) 2^(-m1-m2) (k1+k2+q-1)!
        · ∂^m1[B_{n1|k1}(f;z)] ∂^m2[B_{n2|k2}(f;z)] B_{p|q}(g)
        / ( m1! m2! p! (f')^(k1+k2) )

    summed over q (0 only at p = 0) and divided by n1!·n2!. The argument
    series g_s vanishes for odd s and is 2^{-s} f^{(s+1)} / ((s+1) f') for
    even s. All f powers cancel: ∂^m[B_{n|k}]/f^k expands by Leibniz into
    ratio data, and (f')^{-K} contributes f^{-K} L^{-K}.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("Schwarzian orders must be >= 1")
    key = (ms.key(), "S", n1, n2, trunc)

    def compute():
        m_total = n1 + n2
        inner = trunc + 2 * m_total + 6
        ell = log_derivative(ms, inner)
        ell_inv = ell.invert()
        one = LaurentSeries.constant(1)

        inv_pows = [one]
        for _ in range(m_total):
            inv_pows.append(inv_pows[-1] * ell_inv)

        # (f^k)^(j) / f^k chains: log-derivative of f^k is k·L
        chains = {}
        for k in range(1, max(n1, n2) + 1):
            kl = k * ell
            chain = [one]
            for _ in range(m_total):
                prev = chain[-1]
                chain.append(prev * kl + prev.diff_z())
            chains[k] = chain

        # z-derivatives of the ratio Bell polynomials
        bell_diffs = {}
        for n, kmax in ((n1, n1), (n2, n2)):
            for k in range(1, kmax + 1):
                if (n, k) in bell_diffs:
                    continue
                seq = [bell_of_map(ms, n, k, inner)]
                for _ in range(m_total):
                    seq.append(seq[-1].diff_z())
                bell_diffs[(n, k)] = seq

        arg_memo = {}

        def arg_deriv(n, k, m):
            # d^m/dz^m B_{n|k}(f;z), divided by f^k (Leibniz over f^k · B-hat)
            key_ = (n, k, m)
            got = arg_memo.get(key_)
            if got is not None:
                return got
            total = None
            for j in range(m + 1):
                piece = comb(m, j) * (chains[k][j] * bell_diffs[(n, k)][m - j])
                total = piece if total is None else total + piece
            arg_memo[key_] = total
            return total

        # even-order argument series for the inner Bell polynomials
        g_args = [None]
        for s in range(1, m_total + 1):
            if s % 2:
                g_args.append(LaurentSeries.zero())
            else:
                r = derivative_ratio(ms, s + 1, inner)
                g_args.append(Fraction(1, 2 ** s * (s + 1)) * (r * ell_inv))

        bell_inner = {}

        def inner_bell(p, q):
            got = bell_inner.get((p, q))
            if got is None:
                got = bell_generic(p, q, g_args[1 : p - q + 2], one=one)
                bell_inner[(p, q)] = got
            return got

        total = LaurentSeries.zero()
        for k1 in range(1, n1 + 1):
            for k2 in range(1, n2 + 1):
                big_k = k1 + k2
                for m1 in range(big_k + 1):
                    d1 = arg_deriv(n1, k1, m1)
                    for m2 in range(big_k + 1 - m1):
                        p = big_k - m1 - m2
                        d2 = arg_deriv(n2, k2, m2)
                        base = d1 * d2 * inv_pows[big_k]
                        for q in ((0,) if p == 0 else range(1, p + 1)):
                            if p:
                                inner_b = inner_bell(p, q)
                                if inner_b.is_exact_zero:
                                    continue
                                piece = base * inner_b
                            else:
                                piece = base
                            sign = -1 if (k1 + 1 + m2 + q) % 2 else 1
                            coef = Fraction(
                                sign * factorial(big_k + q - 1),
                                2 ** (m1 + m2)
                                * factorial(m1)
                                * factorial(m2)
                                * factorial(p),
                            )
                            total = total + coef * piece
        total = Fraction(1, factorial(n1) * factorial(n2)) * total
        return total.restrict(trunc)

    return CACHE.get_or_compute(key, compute)


# ---------------------------------------------------------------------------
# point-splitting oracle
# ---------------------------------------------------------------------------

class _DeltaPoly:
    """Polynomial in the splitting parameter δ with LaurentSeries coefficients.

    A plain dense list c[0..order]; coefficients beyond ``order`` are
    discarded by every operation. ε-windows propagate inside the Laurent
    coefficients themselves.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    @classmethod
    def zeros(cls, order):
        return cls([LaurentSeries.zero() for _ in range(order + 1)])

    @classmethod
    def one(cls, order):
        dp = cls.zeros(order)
        dp.c[0] = LaurentSeries.constant(1)
        return dp

    @property
    def order(self):
        return len(self.c) - 1

    def __add__(self, other):
        if not isinstance(other, _DeltaPoly):
            return NotImplemented
        n = min(self.order, other.order)
        return _DeltaPoly([self.c[m] + other.c[m] for m in range(n + 1)])

    def __sub__(self, other):
        if not isinstance(other, _DeltaPoly):
            return NotImplemented
        n = min(self.order, other.order)
        return _DeltaPoly([self.c[m] - other.c[m] for m in range(n + 1)])

    def __mul__(self, other):
        if isinstance(other, _DeltaPoly):
            n = min(self.order, other.order)
            out = [LaurentSeries.zero() for _ in range(n + 1)]
            for i, a in enumerate(self.c):
                if i > n or a.is_exact_zero:
                    continue
                for j, b in enumerate(other.c):
                    if i + j > n:
                        break
                    if b.is_exact_zero:
                        continue
                    out[i + j] = out[i + j] + a * b
            return _DeltaPoly(out)
        return _DeltaPoly([coef * other for coef in self.c])

    def __rmul__(self, other):
        return _DeltaPoly([other * coef for coef in self.c])


def _dp_exp(a: _DeltaPoly) -> _DeltaPoly:
    # exp of a δ-polynomial with no δ⁰ part: the sum terminates
    assert a.c[0].is_zero
    order = a.order
    acc = _DeltaPoly.one(order)
    power = _DeltaPoly.one(order)
    for j in range(1, order + 1):
        power = power * a
        acc = acc + Fraction(1, factorial(j)) * power
    return acc


def _dp_invert(w: _DeltaPoly) -> _DeltaPoly:
    # reciprocal of a δ-polynomial whose δ⁰ Laurent coefficient is invertible
    lead_inv = w.c[0].invert()
    out = [lead_inv]
    for m in range(1, w.order + 1):
        acc = None
        for j in range(1, m + 1):
            if w.c[j].is_exact_zero:
                continue
            piece = w.c[j] * out[m - j]
            acc = piece if acc is None else acc + piece
        out.append(LaurentSeries.zero() if acc is None else -(lead_inv * acc))
    return _DeltaPoly(out)


def schwarzian_point_split(ms: MapSpec, n1: int, n2: int, trunc: int) -> LaurentSeries:
    """S_{n1|n2} by point splitting; the independent oracle.

    Assembles, per k1 <= n1 and k2 <= n2,

        B_{n1|k1}(f(z+δ/2);z) · B_{n2|k2}(f(z-δ/2);z)
        · (-1)^(k1+1) (k1+k2-1)! / (f(z+δ/2)-f(z-δ/2))^(k1+k2),

    adds the flat counterterm (-1)^(n1) (n1+n2-1)! / (n1! n2! δ^(n1+n2)),
    applies the overall 1/(n1! n2!) and reads off the δ⁰ coefficient. The
    coefficients of δ^(-m) for m = 1 .. n1+n2 must vanish identically; any
    survivor raises PoleCancellationError.
    """
    if n1 < 1 or n2 < 1:
        raise ValueError("Schwarzian orders must be >= 1")
    m_total = n1 + n2
    order = m_total + 1
    inner = trunc + 2 * m_total + 8

    ell = log_derivative(ms, inner)
    u_derivs = [None, ell]
    for _ in range(order - 1):
        u_derivs.append(u_derivs[-1].diff_z())

    def shift_exp(sgn):
        a = _DeltaPoly.zeros(order)
        for m in range(1, order + 1):
            a.c[m] = Fraction(sgn ** m, 2 ** m * factorial(m)) * u_derivs[m]
        return _dp_exp(a)

    e_plus = shift_exp(1)
    e_minus = shift_exp(-1)

    diff = e_plus - e_minus
    if not diff.c[0].is_zero:
        raise PoleCancellationError("δ⁰ part of f(z+δ/2)-f(z-δ/2) did not vanish")
    w = _DeltaPoly(diff.c[1:])  # (f(z+δ/2)-f(z-δ/2)) / (δ f), leading entry L
    w_inv = _dp_invert(w)

    shifted = {}

    def shifted_ratio(j, sgn):
        got = shifted.get((j, sgn))
        if got is None:
            cur = derivative_ratio(ms, j, inner)
            cs = []
            for m in range(order + 1):
                cs.append(Fraction(sgn ** m, 2 ** m * factorial(m)) * cur)
                cur = cur.diff_z()
            got = _DeltaPoly(cs)
            shifted[(j, sgn)] = got
        return got

    def pow_chain(base, kmax):
        chain = [_DeltaPoly.one(order)]
        for _ in range(kmax):
            chain.append(chain[-1] * base)
        return chain

    ep_pows = pow_chain(e_plus, n1)
    em_pows = pow_chain(e_minus, n2)
    winv_pows = pow_chain(w_inv, m_total)

    one_dp = _DeltaPoly.one(order)
    acc = {m: LaurentSeries.zero() for m in range(-m_total, 1)}
    norm = factorial(n1) * factorial(n2)
    for k1 in range(1, n1 + 1):
        b1 = bell_generic(
            n1, k1, [shifted_ratio(j, 1) for j in range(1, n1 - k1 + 2)], one=one_dp
        )
        for k2 in range(1, n2 + 1):
            b2 = bell_generic(
                n2, k2, [shifted_ratio(j, -1) for j in range(1, n2 - k2 + 2)],
                one=one_dp,
            )
            big_k = k1 + k2
            num = ep_pows[k1] * em_pows[k2] * b1 * b2 * winv_pows[big_k]
            scal = Fraction((-1) ** (k1 + 1) * factorial(big_k - 1), norm)
            for m, coef in enumerate(num.c):
                shifted_deg = m - big_k
                if shifted_deg > 0:
                    break
                acc[shifted_deg] = acc[shifted_deg] + scal * coef
    counter = Fraction((-1) ** n1 * factorial(m_total - 1), norm)
    acc[-m_total] = acc[-m_total] + LaurentSeries.constant(counter)

    for m in range(1, m_total + 1):
        survivor = acc[-m]
        if not survivor.is_zero:
            raise PoleCancellationError(
                f"δ^-{m} pole survived for S_{n1}|{n2}: {survivor}"
            )
        if survivor.trunc < trunc:
            raise TruncationInsufficientError(trunc, survivor.trunc)
    return acc[0].restrict(trunc)


# ---------------------------------------------------------------------------
# composite relation check for plain series maps
# ---------------------------------------------------------------------------

def _poly_compose(outer, inner):
    # exact composition of coefficient tuples: outer(inner(z))
    result = [GaussianRational(0)]
    for c in reversed(outer):
        # result = result*inner + c
        new = [GaussianRational(0)] * ((len(result) - 1) + (len(inner) - 1) + 1)
        for i, a in enumerate(result):
            if a.is_zero:
                continue
            for j, b in enumerate(inner):
                if b.is_zero:
                    continue
                new[i + j] = new[i + j] + a * b
        new[0] = new[0] + c
        result = new
    while len(result) > 1 and result[-1].is_zero:
        result.pop()
    return tuple(result)


def _compose_series(series: LaurentSeries, arg: LaurentSeries) -> LaurentSeries:
    # substitute ε -> arg(ε) in a series with nonnegative degrees only;
    # arg must have leading degree >= 1
    if series.coeffs and min(series.coeffs) < 0:
        raise ValueError("composition needs a Taylor series")
    if arg.coeffs and min(arg.coeffs) < 1:
        raise ValueError("composition argument must vanish at 0")
    top = min(series.trunc, arg.trunc)
    if top == INF:
        top = max([0, *series.coeffs], default=0)
    acc = LaurentSeries.zero()
    for d in range(int(top), -1, -1):
        acc = acc * arg + series.coeff(d)
    return acc.restrict(int(top)) if acc.trunc >= top else acc


def schwarzian_compose_check(
    f_ms: MapSpec, g_ms: MapSpec, n1: int, n2: int, trunc: int
) -> bool:
    """Check the composite transformation law on plain series maps.

    S_{n1|n2}(g∘f; z) = (1/(n1! n2!)) Σ_{k1,k2} k1! k2!
                        · B_{n1|k1}(f;z) B_{n2|k2}(f;z) · S_{k1|k2}(g)∘f
                        + S_{n1|n2}(f; z)

    The k1!k2!/(n1!n2!) factors come from the normalization of the
    bilinears: the inner anomaly attaches to (1/(k1!k2!))-normalized
    operators. At (1,1) they drop out, which is the form usually quoted.

    Both sides are computed independently: the left from the exactly
    composed polynomial map, the right from direct derivative series of f
    plus series substitution into the Schwarzians of g. Requires both maps
    to be plain series (no essential factor) with f(0) = 0.
    """
    if f_ms.has_essential_factor or g_ms.has_essential_factor:
        raise ValueError("composition check needs plain series maps")
    if not f_ms.h_coeffs[0].is_zero:
        raise ValueError("composition check needs f(0) = 0")

    comp = MapSpec(
        name=f"{g_ms.name}∘{f_ms.name}",
        h_coeffs=_poly_compose(g_ms.h_coeffs, f_ms.h_coeffs),
        has_essential_factor=False,
    )
    lhs = schwarzian_general(comp, n1, n2, trunc)

    f_series = h_at_ieps(f_ms)
    derivs = [f_series]
    for _ in range(max(n1, n2)):
        derivs.append(derivs[-1].diff_z())
    arg = MINUS_I * f_series  # ε-coordinate of the image point

    rhs = schwarzian_general(f_ms, n1, n2, trunc)
    one = LaurentSeries.constant(1)
    norm = Fraction(1, factorial(n1) * factorial(n2))
    for k1 in range(1, n1 + 1):
        b1 = bell_generic(n1, k1, derivs[1 : n1 - k1 + 2], one=one)
        for k2 in range(1, n2 + 1):
            b2 = bell_generic(n2, k2, derivs[1 : n2 - k2 + 2], one=one)
            s_inner = schwarzian_general(g_ms, k1, k2, trunc + 2)
            weight = norm * factorial(k1) * factorial(k2)
            rhs = rhs + weight * (b1 * b2 * _compose_series(s_inner, arg))
    return lhs.matches(rhs, floor=trunc)
