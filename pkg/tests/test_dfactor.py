from fractions import Fraction
from math import factorial

from splab import dfactor, epsilon_order
from splab.laurent import LaurentSeries

from conftest import gq, series


def test_d1_h_one(map_one):
    assert dfactor(map_one, 1, 4) == series({-2: -1}, 4)


def test_d2_h_one(map_one):
    assert dfactor(map_one, 2, 4) == series({-3: (0, -2), -4: (0, -1)}, 4)


def test_least_singular_term_h_one(map_one):
    # least singular term of D(n)/n! is (i/eps)^(n+1)
    for n in range(1, 8):
        d = dfactor(map_one, n, 4)
        top = max(d.coeffs)
        assert top == -(n + 1)
        want = gq(0, 1) ** (n + 1) * factorial(n)
        assert d.coeffs[top] == want


def test_most_singular_term(map_one, map_cos):
    # deepest degree is -2n for both builtins; for h = 1 its coefficient
    # collapses to i^(n+1) via sum_k (-1)^k k! S2(n,k) = (-1)^n
    for ms in (map_one, map_cos):
        for n in range(1, 7):
            d = dfactor(ms, n, 2)
            assert d.lead_degree() == -2 * n
    for n in range(1, 7):
        d = dfactor(map_one, n, 2)
        assert d.coeffs[-2 * n] == gq(0, 1) ** (n + 1)


def test_h_one_pure_monomials_order_to_one(map_one):
    # every multiset {n: p} with sum (n+1) p = N + Q contributes exactly 1
    from splab._combin import partitions_exact

    for total in range(2, 11):
        for q in range(1, total + 1):
            for part in partitions_exact(total, q):
                series_val = LaurentSeries.constant(1)
                order = 0
                for n, p in part.items():
                    dn = dfactor(map_one, n, 2 * total)
                    series_val = series_val * (Fraction(1, factorial(n)) * dn) ** p
                    order += (n + 1) * p
                assert epsilon_order(series_val, order) == gq(1), part


def test_order_must_be_positive(map_one):
    import pytest

    with pytest.raises(ValueError):
        dfactor(map_one, 0, 4)
