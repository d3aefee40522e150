"""Command-line surface: compute, inspect, tabulate, verify.

Exit codes: 0 success or agreement, 1 verification or method mismatch,
2 usage error. Output is deterministic byte for byte for fixed inputs:
terms are enumerated in a fixed canonical order, JSON keys are sorted, and
all arithmetic is exact.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bell import (
    PoleCancellationError,
    bell_of_map,
    schwarzian_general,
    schwarzian_point_split,
)
from .cache import ENV_CACHE_DIR, set_cache_dir
from .conformal import resolve_map
from .dfactor import dfactor
from .gaussian import GaussianRational
from .laurent import LaurentSeries
from .oracle import dp_restricted, gf_expand
from .partition import (
    ConventionViolationError,
    breakdown_json,
    breakdown_record,
    lambda_breakdown,
    lambda_cft,
)

CFT_TABLE_CAP = 12


def _add_common(parser):
    parser.add_argument(
        "--h",
        dest="h_spec",
        default="one",
        help="map regular part: builtin name ('one', 'cos') or h-spec JSON file",
    )
    parser.add_argument(
        "--method",
        choices=("cft", "dp", "gf", "both"),
        default="both",
        help="computation route (default: both)",
    )
    parser.add_argument(
        "--format",
        dest="output_format",
        choices=("json", "csv", "text"),
        default="text",
    )
    parser.add_argument(
        "--window",
        type=int,
        default=None,
        help="override the series window width / truncation order",
    )
    parser.add_argument("--cache-dir", default=None, help="series cache directory")
    parser.add_argument(
        "--force", action="store_true", help="lift the analytic-table size cap"
    )


def _setup_cache(args) -> None:
    directory = args.cache_dir or os.environ.get(ENV_CACHE_DIR)
    set_cache_dir(directory or None)


def _resolve(args, order: int):
    return resolve_map(args.h_spec, order)


def _oracle_value(method: str, N: int, Q) -> int:
    table = dp_restricted(N) if method != "gf" else gf_expand(N)
    if Q is None:
        return table.total(N)
    return table.get(N, Q)


def cmd_lambda(args) -> int:
    N, Q = args.N, args.Q
    if N < 1 or (Q is not None and not (1 <= Q <= N)):
        print("error: need N >= 1 and, if given, 1 <= Q <= N", file=sys.stderr)
        return 2
    values = {}
    if args.method in ("cft", "both"):
        try:
            ms = _resolve(args, 4 * N + 8)
        except (OSError, ValueError, KeyError) as err:
            print(f"error: cannot load map {args.h_spec!r}: {err}", file=sys.stderr)
            return 2
        try:
            if Q is None:
                values["cft"] = sum(
                    lambda_cft(N, q, ms, window=args.window) for q in range(1, N + 1)
                )
            else:
                values["cft"] = lambda_cft(N, Q, ms, window=args.window)
        except ConventionViolationError as err:
            print(f"analytic route failed: {err}", file=sys.stderr)
            if err.breakdown:
                print(json.dumps(err.breakdown, sort_keys=True, indent=2), file=sys.stderr)
            return 1
    if args.method in ("dp", "gf", "both"):
        oracle_method = "dp" if args.method == "both" else args.method
        values[oracle_method] = _oracle_value(oracle_method, N, Q)
    label = f"lambda({N})" if Q is None else f"lambda({N}|{Q})"
    if args.output_format == "json":
        record = {"N": N, "Q": Q, "values": values}
        if len(values) > 1:
            record["match"] = len(set(values.values())) == 1
        print(json.dumps(record, sort_keys=True))
    else:
        for method, value in sorted(values.items()):
            print(f"{label} [{method}] = {value}")
        if len(values) > 1:
            match = len(set(values.values())) == 1
            print("match" if match else "MISMATCH")
    if len(values) > 1 and len(set(values.values())) != 1:
        return 1
    return 0


def cmd_inspect(args) -> int:
    window = args.window if args.window is not None else 4
    try:
        if args.object == "schwarzian":
            n1, n2 = args.params
            ms = _resolve(args, window + 2 * (n1 + n2) + 8)
            payload = schwarzian_general(ms, n1, n2, window).to_json()
        elif args.object == "dfactor":
            (n,) = args.params
            ms = _resolve(args, window + 2 * n + 8)
            payload = dfactor(ms, n, window).to_json()
        elif args.object == "bell":
            n, k = args.params
            ms = _resolve(args, window + 2 * n + 8)
            payload = bell_of_map(ms, n, k, window).to_json()
        elif args.object == "terms":
            N, Q = args.params
            ms = _resolve(args, 4 * (N + Q) + 16)
            payload = breakdown_record(ms, N, Q, window=args.window)
        else:
            print(f"error: unknown inspect object {args.object!r}", file=sys.stderr)
            return 2
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _cft_table(args, nmax: int, ms):
    rows = [[0] * (N + 1) for N in range(nmax + 1)]
    rows[0][0] = 1
    for N in range(1, nmax + 1):
        for Q in range(1, N + 1):
            _terms, total, _w = lambda_breakdown(ms, N, Q, window=args.window)
            rows[N][Q] = int(total.re) if total.is_real and total.re.denominator == 1 else str(total)
    return rows


def _format_table(rows, nmax: int, fmt: str) -> str:
    if fmt == "csv":
        lines = ["N," + ",".join(str(k) for k in range(1, nmax + 1))]
        for N in range(1, nmax + 1):
            cells = [
                str(rows[N][k]) if k <= N else "0" for k in range(1, nmax + 1)
            ]
            lines.append(f"{N}," + ",".join(cells))
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return (
            json.dumps(
                {"nmax": nmax, "rows": [list(r) for r in rows]}, sort_keys=True
            )
            + "\n"
        )
    width = max(len(str(rows[N][k])) for N in range(1, nmax + 1) for k in range(1, N + 1))
    lines = []
    for N in range(1, nmax + 1):
        cells = " ".join(f"{rows[N][k]:>{width}}" for k in range(1, N + 1))
        lines.append(f"N={N:>2}: {cells}")
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    nmax = args.nmax
    if nmax < 1:
        print("error: table size must be >= 1", file=sys.stderr)
        return 2
    if args.method in ("cft", "both") and nmax > CFT_TABLE_CAP and not args.force:
        print(
            f"error: analytic table capped at {CFT_TABLE_CAP} (use --force)",
            file=sys.stderr,
        )
        return 2
    tables = {}
    if args.method in ("dp", "both"):
        tables["dp"] = dp_restricted(nmax).rows
    if args.method == "gf":
        tables["gf"] = gf_expand(nmax).rows
    if args.method in ("cft", "both"):
        try:
            ms = _resolve(args, 4 * nmax + 16)
        except (OSError, ValueError, KeyError) as err:
            print(f"error: cannot load map {args.h_spec!r}: {err}", file=sys.stderr)
            return 2
        tables["cft"] = _cft_table(args, nmax, ms)
    names = sorted(tables)
    if len(names) > 1:
        match = all(tables[names[0]] == tables[n] for n in names[1:])
        sys.stdout.write(_format_table(tables[names[0]], nmax, args.output_format))
        print("match" if match else "MISMATCH")
        return 0 if match else 1
    sys.stdout.write(_format_table(tables[names[0]], nmax, args.output_format))
    return 0


def _check(report, group: str, ok: bool, detail="") -> bool:
    line = f"{'PASS' if ok else 'FAIL'} {group}"
    if detail and not ok:
        line += f": {detail}"
    report.append((group, ok, line))
    print(line)
    return ok


def cmd_verify(args) -> int:
    nmax = args.nmax
    if nmax < 1:
        print("error: verify size must be >= 1", file=sys.stderr)
        return 2
    ok_all = True
    report = []
    half = Fraction(1, 2)

    # group 1: Schwarzian reference values
    one_map = resolve_map("one", 32)
    cos_map = resolve_map("cos", 32)
    s_one = schwarzian_general(one_map, 1, 1, 4)
    expect_one = LaurentSeries.make([(-4, Fraction(1, 12))], 4)
    good = s_one.matches(expect_one, floor=4)
    s_cos = schwarzian_general(cos_map, 1, 1, 4)
    vals = {d: s_cos.coeff(d) for d in range(-4, 1)}
    good = good and vals[-4] == GaussianRational(Fraction(1, 12))
    good = good and vals[-1] == GaussianRational(Fraction(1, 3))
    good = good and all(
        vals[d].is_zero for d in (-3, -2, 0)
    )
    ok_all &= _check(report, "schwarzian-values", good)

    # group 2: point-split equivalence
    good = True
    detail = ""
    try:
        for pair in ((1, 1), (1, 2), (2, 2), (1, 3)):
            for ms in (one_map, cos_map):
                a = schwarzian_general(ms, pair[0], pair[1], 2)
                b = schwarzian_point_split(ms, pair[0], pair[1], 2)
                if not a.matches(b, floor=2):
                    good = False
                    detail = f"S_{pair[0]}|{pair[1]} for h={ms.name}"
    except PoleCancellationError as err:
        good, detail = False, str(err)
    ok_all &= _check(report, "point-split-equivalence", good, detail)

    # group 3: pure-map structure for h = 1 (every ν-term 0, every D-term 1)
    good = True
    detail = ""
    for N in range(1, min(nmax, 10) + 1):
        for Q in range(1, N + 1):
            terms, total, _w = lambda_breakdown(one_map, N, Q)
            for tv in terms:
                want = GaussianRational(0 if tv.descriptor.nu else 1)
                if tv.contribution != want:
                    good = False
                    detail = f"({N},{Q}) term {tv.descriptor.label()}"
    ok_all &= _check(report, "pure-map-structure", good, detail)

    # group 4: analytic values against the recurrence table
    ms = _resolve(args, 4 * nmax + 16)
    table = dp_restricted(nmax)
    good = True
    detail = ""
    for N in range(1, nmax + 1):
        for Q in range(1, N + 1):
            _terms, total, _w = lambda_breakdown(ms, N, Q, window=args.window)
            want = table.get(N, Q)
            if str(total) != str(want):
                good = False
                detail = f"lambda({N}|{Q}) = {total}, table says {want}"
    ok_all &= _check(report, "table-cross-check", good, detail)

    # group 5: per-term reference breakdowns for h = cos
    hook = None
    if args.corrupt_weight:
        def hook(idx, weight):
            return weight * Fraction(3, 2) if idx == 0 else weight

    good = True
    detail = ""
    expected_42 = {
        "S_1|1·D(1)^2": GaussianRational(0),
        "D(2)^2": GaussianRational(1),
        "D(1)·D(3)": GaussianRational(1),
    }
    expected_52 = {
        "S_1|2·D(1)^2": GaussianRational(Fraction(-1, 4)),
        "S_1|1·D(1)·D(2)": GaussianRational(Fraction(7, 12)),
        "D(1)·D(4)": GaussianRational(Fraction(1, 4)),
        "D(2)·D(3)": GaussianRational(Fraction(17, 12)),
    }
    for (N, Q, expected, total_want) in (
        (4, 2, expected_42, 2),
        (5, 2, expected_52, 2),
    ):
        record = breakdown_record(cos_map, N, Q, _weight_hook=hook)
        got = {t["label"]: GaussianRational.from_json(t["contribution"]) for t in record["terms"]}
        total = sum((v for v in got.values()), GaussianRational(0))
        if total != GaussianRational(total_want):
            good = False
            detail = breakdown_json(record)
        deviations = {
            lbl: f"{got.get(lbl)} (reference {expected[lbl]})"
            for lbl in expected
            if got.get(lbl) != expected[lbl]
        }
        if deviations:
            good = False
            print(f"  deviation in lambda({N}|{Q}) terms: {deviations}")
            detail = breakdown_json(record)
    ok_all &= _check(report, "per-term-breakdowns", good, detail)

    print("verify:", "all groups passed" if ok_all else "FAILURES above")
    return 0 if ok_all else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="splab",
        description="Restricted partition numbers from exact conformal-map series",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_lambda = sub.add_parser("lambda", help="compute lambda(N|Q) or lambda(N)")
    p_lambda.add_argument("N", type=int)
    p_lambda.add_argument("Q", type=int, nargs="?", default=None)
    _add_common(p_lambda)
    p_lambda.set_defaults(func=cmd_lambda)

    p_inspect = sub.add_parser("inspect", help="dump a series or term breakdown")
    p_inspect.add_argument(
        "object", choices=("schwarzian", "dfactor", "bell", "terms")
    )
    p_inspect.add_argument("params", type=int, nargs="+")
    _add_common(p_inspect)
    p_inspect.set_defaults(func=cmd_inspect)

    p_table = sub.add_parser("table", help="full lambda(N|k) triangle")
    p_table.add_argument("nmax", type=int)
    _add_common(p_table)
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run the verification groups")
    p_verify.add_argument("nmax", type=int)
    _add_common(p_verify)
    p_verify.add_argument(
        "--corrupt-weight", action="store_true", help=argparse.SUPPRESS
    )
    p_verify.set_defaults(func=cmd_verify)
    return parser


_PARAM_COUNTS = {"schwarzian": 2, "dfactor": 1, "bell": 2, "terms": 2}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if args.command == "inspect":
        want = _PARAM_COUNTS[args.object]
        if len(args.params) != want:
            print(
                f"error: inspect {args.object} takes {want} integer(s)",
                file=sys.stderr,
            )
            return 2
        args.params = tuple(args.params)
    _setup_cache(args)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
