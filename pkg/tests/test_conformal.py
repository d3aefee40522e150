from fractions import Fraction

import pytest

from splab import (
    MapSpec,
    TruncationInsufficientError,
    builtin_map,
    complete_bell,
    derivative_ratio,
    h_at_ieps,
    load_map_spec,
    log_derivative,
    save_map_spec,
)
from splab.laurent import LaurentSeries

from conftest import gq, series


def tanh_series_coeffs(order):
    """Taylor coefficients of tanh as exact Fractions, via series division.

    Independent of the LaurentSeries machinery: plain dense lists for
    sinh/cosh and long division.
    """
    from math import factorial

    sinh = [Fraction(0)] * (order + 1)
    cosh = [Fraction(0)] * (order + 1)
    for k in range(order + 1):
        if k % 2:
            sinh[k] = Fraction(1, factorial(k))
        else:
            cosh[k] = Fraction(1, factorial(k))
    out = [Fraction(0)] * (order + 1)
    rem = sinh[:]
    for k in range(order + 1):
        out[k] = rem[k]
        for j in range(k, order + 1):
            rem[j] -= out[k] * cosh[j - k]
    return out


def test_log_derivative_one(map_one):
    ell = log_derivative(map_one, 8)
    assert ell.coeff(-2) == gq(0, -1)
    assert all(d == -2 for d in ell.coeffs)


def test_log_derivative_cos_matches_tanh_oracle(map_cos):
    # h'/h = -tan z; at z = i*eps this is -i*tanh(eps)
    ell = log_derivative(map_cos, 11)
    tanh = tanh_series_coeffs(11)
    assert ell.coeff(-2) == gq(0, -1)
    for d in range(-1, 12):
        want = gq(0, -tanh[d]) if d >= 1 else gq(0)
        assert ell.coeff(d) == want, d


def test_log_derivative_plain_constant_map():
    ms = MapSpec("const", (gq(1),), False)
    assert log_derivative(ms, 6).is_zero


def test_ratio_r1_is_log_derivative(map_cos):
    assert derivative_ratio(map_cos, 1, 7) == log_derivative(map_cos, 7)


def test_ratio_r2_r3_h_one(map_one):
    r2 = derivative_ratio(map_one, 2, 4)
    assert r2 == series({-3: 2, -4: -1}, 4)
    r3 = derivative_ratio(map_one, 3, 4)
    assert r3 == series({-4: (0, 6), -5: (0, -6), -6: (0, 1)}, 4)


@pytest.mark.parametrize("name", ["one", "cos"])
def test_faa_di_bruno_closure(name):
    # R_n equals the complete Bell polynomial in (u', u'', ..., u^(n)),
    # u' = L, each next argument the z-derivative of the previous
    ms = builtin_map(name, 64)
    T = 6
    for n in range(1, 11):
        args = [log_derivative(ms, T + 2 * n)]
        for _ in range(n - 1):
            args.append(args[-1].diff_z())
        direct = derivative_ratio(ms, n, T)
        bell = complete_bell(n, args, one=LaurentSeries.constant(1))
        assert direct.matches(bell, floor=T)


def test_leading_degree_law_h_one(map_one):
    for n in range(1, 11):
        rn = derivative_ratio(map_one, n, 4)
        assert rn.lead_degree() == -2 * n
        ln = log_derivative(map_one, 4 + 2 * n) ** n
        diff = rn - ln
        assert diff.is_zero or diff.lead_degree() >= -2 * n + 1


def test_plain_map_ratios_match_direct_differentiation(map_mobius):
    h = h_at_ieps(map_mobius)
    for n in range(1, 6):
        rn = derivative_ratio(map_mobius, n, 6)
        deriv = h
        for _ in range(n):
            deriv = deriv.diff_z()
        assert (rn * h).matches(deriv, floor=6)


def test_essential_map_requires_h0_nonzero():
    with pytest.raises(ValueError):
        MapSpec("bad", (gq(0), gq(1)), True)


def test_plain_map_may_vanish_at_origin():
    ms = MapSpec("f", (gq(0), gq(1), gq(1)), False)
    ell = log_derivative(ms, 6)
    assert ell.lead_degree() == -1


def test_map_spec_json_round_trip(tmp_path):
    ms = MapSpec("custom", (gq(1), gq(Fraction(1, 2), Fraction(-2, 3))), True)
    path = tmp_path / "h.json"
    save_map_spec(ms, path)
    assert load_map_spec(path) == ms


def test_builtin_cos_has_margin():
    ms = builtin_map("cos", 20)
    assert len(ms.h_coeffs) >= 22
    with pytest.raises(ValueError):
        builtin_map("nope", 4)


def test_cache_hits_are_bit_identical(map_cos, tmp_path):
    from splab import set_cache_dir

    fresh = derivative_ratio(map_cos, 4, 10)
    set_cache_dir(tmp_path)          # clears memo, enables disk
    try:
        first = derivative_ratio(map_cos, 4, 10)   # computed, stored
        set_cache_dir(tmp_path)                    # clear memo again
        second = derivative_ratio(map_cos, 4, 10)  # loaded from disk
        assert first == second == fresh
    finally:
        set_cache_dir(None)
