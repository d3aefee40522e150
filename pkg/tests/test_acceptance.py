"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every criterion is asserted exactly as stated, at its stated tolerance and
runtime bound. Criteria whose reference values the exact engine contradicts
(cross-checked against independent oracles) are asserted faithfully anyway
and fail with the measured value in the message; nothing is loosened to
force green.
"""

import math
import time
from fractions import Fraction

import pytest

from splab import (
    builtin_map,
    dp_restricted,
    hardy_ramanujan,
    lambda_breakdown,
    lambda_cft,
    rademacher,
    schwarzian_11,
    schwarzian_general,
    schwarzian_point_split,
)
from splab.cli import main as cli_main

from conftest import gq


def report(criterion, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} acceptance criterion {criterion}"
    if detail:
        line += f" ({detail})"
    print(line)


@pytest.fixture(scope="module")
def cos_map():
    return builtin_map("cos", 96)


@pytest.fixture(scope="module")
def one_map():
    return builtin_map("one", 96)


def test_criterion_01_lambda_4_2_worked_example(cos_map):
    t0 = time.time()
    try:
        terms, total, _w = lambda_breakdown(cos_map, 4, 2)
        got = {tv.descriptor.label(): tv.contribution for tv in terms}
        assert got["S_1|1·D(1)^2"] == gq(0)
        assert got["D(2)^2"] == gq(1)
        assert got["D(1)·D(3)"] == gq(1)
        assert total == gq(2)
        elapsed = time.time() - t0
        assert elapsed < 1.0, f"took {elapsed:.2f}s"
    except AssertionError:
        report(1, False)
        raise
    report(1, True, f"{time.time()-t0:.2f}s")


def test_criterion_02_lambda_5_2_worked_example(cos_map):
    t0 = time.time()
    reference = {
        "S_1|2·D(1)^2": gq(Fraction(-1, 4)),
        "S_1|1·D(1)·D(2)": gq(Fraction(7, 12)),
        "D(1)·D(4)": gq(Fraction(1, 4)),
        "D(2)·D(3)": gq(Fraction(17, 12)),
    }
    terms, total, _w = lambda_breakdown(cos_map, 5, 2)
    got = {tv.descriptor.label(): tv.contribution for tv in terms}
    deviations = {
        label: (str(got[label]), str(want.re))
        for label, want in reference.items()
        if got[label] != want
    }
    elapsed = time.time() - t0
    try:
        assert elapsed < 1.0, f"took {elapsed:.2f}s"
        # the sum is the binding value; per-term deviations are reported by
        # cmd_verify (and in this message)
        assert total == gq(2), (
            f"lambda(5|2) with h=cos evaluates to {total}, not 2; "
            f"per-term deviations {deviations}"
        )
        assert not deviations, f"per-term deviations {deviations}"
    except AssertionError:
        report(2, False, f"sum={total}")
        raise
    report(2, True, f"{elapsed:.2f}s")


def test_criterion_03_edge_families(one_map, cos_map):
    t0 = time.time()
    try:
        for N in range(2, 13):
            for ms in (one_map, cos_map):
                assert lambda_cft(N, N, ms) == 1, (N, N, ms.name)
                assert lambda_cft(N, N - 1, ms) == 1, (N, N - 1, ms.name)
        elapsed = time.time() - t0
        assert elapsed < 30.0, f"took {elapsed:.1f}s"
    except AssertionError:
        report(3, False)
        raise
    report(3, True, f"{time.time()-t0:.1f}s")


def test_criterion_04_oracle_sweep(one_map, cos_map):
    t0 = time.time()
    mismatches = []
    table = dp_restricted(10)
    for N in range(1, 11):
        for Q in range(1, N + 1):
            got = lambda_cft(N, Q, one_map)
            if got != table.get(N, Q):
                mismatches.append(("one", N, Q, got, table.get(N, Q)))
    for N in range(1, 9):
        for Q in range(1, N + 1):
            # collect the deviation instead of tripping the integrality
            # abort, so the whole sweep is reported
            _terms, total, _w = lambda_breakdown(cos_map, N, Q)
            want = table.get(N, Q)
            if str(total) != str(want):
                mismatches.append(("cos", N, Q, str(total), want))
    elapsed = time.time() - t0
    try:
        assert elapsed < 600.0, f"took {elapsed:.0f}s"
        assert not mismatches, (
            f"{len(mismatches)} analytic values disagree with the recurrence "
            f"table: {mismatches}"
        )
    except AssertionError:
        report(4, False, f"{len(mismatches)} mismatches, {elapsed:.0f}s")
        raise
    report(4, True, f"{elapsed:.0f}s")


def test_criterion_05_h_one_structure_theorem(one_map):
    try:
        table = dp_restricted(10)
        for N in range(1, 11):
            for Q in range(1, N + 1):
                terms, total, _w = lambda_breakdown(one_map, N, Q)
                pure = 0
                for tv in terms:
                    if tv.descriptor.nu:
                        assert tv.contribution == gq(0), tv.descriptor.label()
                    else:
                        assert tv.contribution == gq(1), tv.descriptor.label()
                        pure += 1
                assert pure == table.get(N, Q)
                assert total == gq(table.get(N, Q))
    except AssertionError:
        report(5, False)
        raise
    report(5, True)


def test_criterion_06_schwarzian_values(one_map, cos_map):
    try:
        s_one = schwarzian_11(one_map, 4)
        assert s_one.coeff(-4) == gq(Fraction(1, 12))
        assert all(d == -4 for d in s_one.coeffs), "extra terms in window"

        six_s = 6 * schwarzian_11(cos_map, 0)
        assert six_s.coeff(-4) == gq(Fraction(1, 2))
        for d in (-3, -2, 0):
            assert six_s.coeff(d) == gq(0), f"degree {d}"
        got = six_s.coeff(-1)
        assert got == gq(2), (
            f"6*S(1|1) for h=cos has coefficient {got} at degree -1, not 2 "
            f"(exact value cross-checked against an independent dense-series "
            f"oracle in test_schwarzian.py)"
        )
    except AssertionError:
        report(6, False)
        raise
    report(6, True)


def test_criterion_07_point_split_equivalence(one_map, cos_map):
    t0 = time.time()
    try:
        for pair in ((1, 1), (1, 2), (2, 2), (1, 3)):
            for ms in (one_map, cos_map):
                a = schwarzian_general(ms, pair[0], pair[1], 2)
                b = schwarzian_point_split(ms, pair[0], pair[1], 2)
                assert a.matches(b, floor=2), (pair, ms.name)
        elapsed = time.time() - t0
        assert elapsed < 60.0, f"took {elapsed:.0f}s"
    except AssertionError:
        report(7, False)
        raise
    report(7, True, f"{time.time()-t0:.1f}s")


def test_criterion_08_bell_faa_di_bruno_suite(one_map, cos_map):
    import random

    from splab import bell_generic, complete_bell, derivative_ratio, log_derivative
    from splab.laurent import LaurentSeries
    from test_bell import set_partition_count

    try:
        ones = [gq(1)] * 8
        for n in range(1, 9):
            for k in range(1, n + 1):
                assert bell_generic(n, k, ones) == gq(set_partition_count(n, k))

        rng = random.Random(5150)
        for _ in range(50):
            n = rng.randint(1, 8)
            k = rng.randint(1, n)
            g = [
                gq(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                   Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
                for _ in range(n - k + 1)
            ]
            a = gq(Fraction(rng.randint(1, 9), rng.randint(1, 9)))
            b = gq(Fraction(rng.randint(1, 9), rng.randint(1, 9)),
                   Fraction(rng.randint(-5, 5), 4))
            scaled = [a * b ** (j + 1) * g[j] for j in range(len(g))]
            assert bell_generic(n, k, scaled) == a ** k * b ** n * bell_generic(n, k, g)

        for ms in (one_map, cos_map):
            for n in range(1, 11):
                args = [log_derivative(ms, 6 + 2 * n)]
                for _ in range(n - 1):
                    args.append(args[-1].diff_z())
                direct = derivative_ratio(ms, n, 6)
                bell = complete_bell(n, args, one=LaurentSeries.constant(1))
                assert direct.matches(bell, floor=6), (ms.name, n)
    except AssertionError:
        report(8, False)
        raise
    report(8, True)


def test_criterion_09_asymptotics():
    t0 = time.time()
    try:
        table = dp_restricted(1000)
        assert round(rademacher(10, 8)) == table.total(10)
        assert round(rademacher(20, 10)) == table.total(20)
        assert abs(rademacher(50, 12) - table.total(50)) < 0.5

        ratios = {}
        for N in (100, 400, 1000):
            ratios[N] = hardy_ramanujan(N) / float(table.total(N))
        assert 0.9 <= ratios[1000] <= 1.1
        assert abs(ratios[100] - 1) > abs(ratios[400] - 1) > abs(ratios[1000] - 1)
        elapsed = time.time() - t0
        assert elapsed < 10.0, f"took {elapsed:.1f}s"
    except AssertionError:
        report(9, False)
        raise
    report(9, True, f"{time.time()-t0:.1f}s")


def test_criterion_10_determinism(tmp_path, capsys):
    try:
        def table_output(*extra):
            code = cli_main(["table", "8", "--method", "both", *extra])
            out = capsys.readouterr().out
            assert code == 0
            return out

        first = table_output()
        second = table_output()
        assert first == second, "repeat runs differ"
        cache_dir = tmp_path / "cache"
        cold = table_output("--cache-dir", str(cache_dir))
        warm = table_output("--cache-dir", str(cache_dir))
        assert cold == first and warm == first, "cache changed the output"
    except AssertionError:
        report(10, False)
        raise
    report(10, True)
