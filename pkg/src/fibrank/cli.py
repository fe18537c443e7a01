"""Command-line frontend.

Every subcommand works for any nondegenerate Lucas sequence through the
global --a1/--a2 flags (default 1 1, the Fibonacci numbers).  Output goes
to stdout as text (default), JSON (--json, schema_version 1, exact
rationals rendered as "numerator/denominator" strings) or CSV (--csv,
floats with 15 significant digits).  Warnings and errors go to stderr.

Exit codes: 0 success, 2 usage error, 3 domain error (rank undefined,
non-member where a member is required), 4 overflow / out of range.
"""

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from . import oracle
from .arith import OutOfRangeError
from .density import (
    NonMemberError,
    density_bk_series,
    density_series,
    heilbronn_lower_bound,
    inclusion_exclusion_check,
    is_member,
    lk_generators,
    lucas_density_series,
    lucas_is_member,
)
from .fib import FIBONACCI, LucasParams
from .rank import RankUndefinedError, default_cache, lucas_rank, rank

SCHEMA_VERSION = "1"

TAIL_WARNING = "tail estimate is heuristic"
HEILBRONN_WARNING = "lower bound certified only in the limit p_bound -> infinity"
DEFAULT_DEPTH = 100_000


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _nonnegative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text}")
    return value


def _gamma(text):
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"gamma must be a fraction A/Q, got {text}") from exc
    if not 0 < value < 1:
        raise argparse.ArgumentTypeError(f"gamma must lie in (0, 1), got {text}")
    return value


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _f15(x) -> str:
    return format(float(x), ".15g")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--a1", type=int, default=1, help="Lucas coefficient a1 (default 1)")
    common.add_argument("--a2", type=int, default=1, help="Lucas coefficient a2 (default 1)")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--csv", dest="fmt", action="store_const", const="csv")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    common.set_defaults(fmt="text")
    common.add_argument("--threads", type=_nonnegative, default=None, help="0 = auto (default: FIBRANK_THREADS or 1)")
    common.add_argument("--seed", type=int, default=None, help="accepted and ignored; no randomness affects results")

    parser = argparse.ArgumentParser(prog="fibrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rank", parents=[common], help="rank of appearance z(M) and ell(M)")
    p.add_argument("m", type=_positive)

    p = sub.add_parser("ell", parents=[common], help="ell(M) = lcm(M, z(M))")
    p.add_argument("m", type=_positive)

    p = sub.add_parser("member", parents=[common], help="decide whether A_K is nonempty")
    p.add_argument("k", type=_positive)

    for name, help_ in (
        ("density", "truncated density series of A_K"),
        ("density-b", "truncated density series of B_K (d coprime to K)"),
        ("iecheck", "inclusion-exclusion identity check on aligned support"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("k", type=_positive)
        p.add_argument("--depth", type=_positive, default=DEFAULT_DEPTH)

    p = sub.add_parser("count", parents=[common], help="#A_K(x) by direct enumeration")
    p.add_argument("k", type=_positive)
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--checkpoints", type=_positive, nargs="+", default=None)
    p.add_argument("--witnesses", type=_nonnegative, default=0, help="include the first W witnesses")

    p = sub.add_parser("verify-structure", parents=[common], help="check A_K = ell(K) * nonmultiples(L_K)")
    p.add_argument("k", type=_positive)
    p.add_argument("--limit", type=_positive, required=True)

    p = sub.add_parser("scan-b", parents=[common], help="#B(x) = #{k <= x : A_k nonempty}")
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--checkpoints", type=_positive, nargs="+", default=None)

    p = sub.add_parser("lowrank", parents=[common], help="primes with z(p) <= p^gamma")
    p.add_argument("--gamma", type=_gamma, required=True, metavar="A/Q")
    p.add_argument("--limit", type=_positive, required=True)
    p.add_argument("--checkpoints", type=_positive, nargs="+", default=None)

    p = sub.add_parser("ellsum", parents=[common], help="partial sum of 1/ell(n)")
    p.add_argument("--limit", type=_positive, required=True)

    p = sub.add_parser("nonmult", parents=[common], help="density of nonmultiples of L_K vs Heilbronn bound")
    p.add_argument("k", type=_positive)
    p.add_argument("--pbound", type=_positive, required=True)
    p.add_argument("--limit", type=_positive, required=True)

    p = sub.add_parser("witnesses", parents=[common], help="first elements of A_K")
    p.add_argument("k", type=_positive)
    p.add_argument("--max", type=_positive, default=10, dest="max_witnesses")
    p.add_argument("--limit", type=_positive, default=10**6)

    return parser


def _resolve_threads(args) -> int:
    threads = args.threads
    if threads is None:
        env = os.environ.get("FIBRANK_THREADS")
        threads = int(env) if env else 1
    if threads == 0:
        threads = os.cpu_count() or 1
    return threads


def _seq(args) -> LucasParams:
    if args.a1 == 1 and args.a2 == 1:
        return FIBONACCI
    return LucasParams(args.a1, args.a2)


def _series_payload(s, warnings):
    return (
        {
            "k": s.k,
            "depth": s.depth,
            "partial_sum": _frac_str(s.partial_sum),
            "float_value": s.float_value,
            "tail_window": _frac_str(s.tail_window),
            "tail_window_float": float(s.tail_window),
        },
        warnings,
        (
            ["k", "depth", "partial_sum", "tail_window"],
            [{"k": s.k, "depth": s.depth, "partial_sum": _f15(s.partial_sum), "tail_window": _f15(s.tail_window)}],
        ),
    )


def _dispatch(args):
    """Run one subcommand.  Returns (params, result, warnings, csv_table)."""
    seq = _seq(args)
    threads = _resolve_threads(args)
    cache = default_cache(seq)
    fibonacci = seq.is_fibonacci
    params = {"a1": seq.a1, "a2": seq.a2}
    cmd = args.command

    if cmd == "rank":
        params["m"] = args.m
        rec = rank(args.m, cache) if fibonacci else lucas_rank(seq, args.m, cache)
        result = {"m": rec.m, "z": rec.z, "ell": rec.ell}
        return params, result, [], (["m", "z", "ell"], [result])

    if cmd == "ell":
        params["m"] = args.m
        rec = rank(args.m, cache) if fibonacci else lucas_rank(seq, args.m, cache)
        result = {"m": rec.m, "ell": rec.ell}
        return params, result, [], (["m", "ell"], [result])

    if cmd == "member":
        params["k"] = args.k
        v = is_member(args.k, cache) if fibonacci else lucas_is_member(seq, args.k, cache)
        result = {"k": v.k, "ell": v.ell_k, "gcd": v.g, "member": v.member}
        return params, result, [], (["k", "ell", "gcd", "member"], [result])

    if cmd in ("density", "density-b"):
        params.update(k=args.k, depth=args.depth)
        if cmd == "density":
            s = (
                density_series(args.k, args.depth, cache, threads)
                if fibonacci
                else lucas_density_series(seq, args.k, args.depth, cache, threads)
            )
        else:
            s = density_bk_series(args.k, args.depth, cache, threads)
        result, warnings, table = _series_payload(s, [TAIL_WARNING])
        return params, result, warnings, table

    if cmd == "iecheck":
        params.update(k=args.k, depth=args.depth)
        lhs, rhs, gap = inclusion_exclusion_check(args.k, args.depth, cache, threads)
        result = {
            "k": args.k,
            "depth": args.depth,
            "lhs": _frac_str(lhs),
            "rhs": _frac_str(rhs),
            "gap": _frac_str(gap),
            "exact_zero": gap == 0,
        }
        rows = [{"k": args.k, "depth": args.depth, "lhs": _f15(lhs), "rhs": _f15(rhs), "gap": _f15(gap)}]
        return params, result, [], (["k", "depth", "lhs", "rhs", "gap"], rows)

    if cmd == "count":
        params.update(k=args.k, limit=args.limit)
        if args.checkpoints:
            params["checkpoints"] = sorted(set(args.checkpoints))
        reports = oracle.count_Ak(
            args.k, args.limit, args.checkpoints, witness_cap=args.witnesses, seq=seq, threads=threads
        )
        rows = [{"k": r.k, "x": r.x, "count": r.count, "ratio": _f15(r.ratio)} for r in reports]
        result = {
            "k": args.k,
            "reports": [
                {"x": r.x, "count": r.count, "ratio": r.ratio}
                | ({"witnesses": list(r.witnesses)} if r.witnesses is not None else {})
                for r in reports
            ],
        }
        return params, result, [], (["k", "x", "count", "ratio"], rows)

    if cmd == "verify-structure":
        params.update(k=args.k, limit=args.limit)
        ok = oracle.verify_structure(args.k, args.limit, cache)
        result = {"k": args.k, "limit": args.limit, "verified": ok}
        return params, result, [], (["k", "limit", "verified"], [result])

    if cmd == "scan-b":
        params["limit"] = args.limit
        if args.checkpoints:
            params["checkpoints"] = sorted(set(args.checkpoints))
        rows_, unknown = oracle.scan_B(args.limit, args.checkpoints, cache, threads)
        rows = [
            {"x": r.x, "count": r.count, "ratio": _f15(r.ratio), "ratio_logx": _f15(r.count * math.log(r.x) / r.x)}
            for r in rows_
        ]
        result = {
            "rows": [
                {"x": r.x, "count": r.count, "ratio": r.ratio, "ratio_logx": r.count * math.log(r.x) / r.x}
                for r in rows_
            ],
            "unknown": unknown,
        }
        return params, result, [], (["x", "count", "ratio", "ratio_logx"], rows)

    if cmd == "lowrank":
        params.update(gamma=_frac_str(args.gamma), limit=args.limit)
        if args.checkpoints:
            params["checkpoints"] = sorted(set(args.checkpoints))
        rows_ = oracle.scan_low_rank_primes(args.gamma, args.limit, args.checkpoints, cache)
        rows = [{"x": r.x, "count": r.count, "ratio": _f15(r.ratio)} for r in rows_]
        result = {"rows": [{"x": r.x, "count": r.count, "ratio": r.ratio} for r in rows_]}
        return params, result, [], (["x", "count", "ratio"], rows)

    if cmd == "ellsum":
        params["limit"] = args.limit
        total = oracle.partial_ell_sum(args.limit, cache)
        result = {"limit": args.limit, "sum": _frac_str(total), "float_value": float(total)}
        rows = [{"limit": args.limit, "sum": _f15(total)}]
        return params, result, [], (["limit", "sum"], rows)

    if cmd == "nonmult":
        params.update(k=args.k, pbound=args.pbound, limit=args.limit)
        gens = lk_generators(args.k, args.pbound, cache)
        measured = oracle.nonmultiple_density(gens, args.limit)
        bound = heilbronn_lower_bound(gens)
        result = {
            "k": args.k,
            "pbound": args.pbound,
            "limit": args.limit,
            "generators": len(gens.elements()),
            "density": _frac_str(measured),
            "density_float": float(measured),
            "heilbronn": _frac_str(bound),
            "heilbronn_float": float(bound),
        }
        rows = [
            {
                "k": args.k,
                "pbound": args.pbound,
                "limit": args.limit,
                "density": _f15(measured),
                "heilbronn": _f15(bound),
            }
        ]
        return params, result, [HEILBRONN_WARNING], (["k", "pbound", "limit", "density", "heilbronn"], rows)

    if cmd == "witnesses":
        params.update(k=args.k, max=args.max_witnesses, limit=args.limit)
        report = oracle.count_Ak(
            args.k, args.limit, witness_cap=args.max_witnesses, seq=seq, threads=threads
        )[-1]
        result = {"k": args.k, "limit": args.limit, "witnesses": list(report.witnesses)}
        rows = [{"k": args.k, "n": n} for n in report.witnesses]
        return params, result, [], (["k", "n"], rows)

    raise ValueError(f"unknown command {cmd}")  # pragma: no cover


def _render_text(cmd, result):
    if cmd == "rank":
        return f"z({result['m']}) = {result['z']}, ell({result['m']}) = {result['ell']}"
    if cmd == "ell":
        return f"ell({result['m']}) = {result['ell']}"
    if cmd == "member":
        return (
            f"k = {result['k']}: member = {'yes' if result['member'] else 'no'} "
            f"(ell = {result['ell']}, gcd = {result['gcd']})"
        )
    if cmd in ("density", "density-b"):
        return (
            f"k = {result['k']}: partial_sum = {result['partial_sum']} "
            f"~ {result['float_value']:.15g} (depth {result['depth']}, "
            f"tail window ~ {result['tail_window_float']:.3g})"
        )
    if cmd == "iecheck":
        return (
            f"k = {result['k']}: lhs = {result['lhs']}, rhs = {result['rhs']}, "
            f"gap = {result['gap']} ({'exactly zero' if result['exact_zero'] else 'NONZERO'})"
        )
    if cmd == "count":
        lines = []
        for r in result["reports"]:
            line = f"#A_{result['k']}({r['x']}) = {r['count']} (ratio {r['ratio']:.6g})"
            if "witnesses" in r:
                line += f"; witnesses {r['witnesses']}"
            lines.append(line)
        return "\n".join(lines)
    if cmd == "verify-structure":
        return f"k = {result['k']}: structural decomposition {'verified' if result['verified'] else 'FAILED'} up to {result['limit']}"
    if cmd == "scan-b":
        lines = [
            f"#B({r['x']}) = {r['count']} (ratio {r['ratio']:.6g}, ratio*log(x) {r['ratio_logx']:.6g})"
            for r in result["rows"]
        ]
        if result["unknown"]:
            lines.append(f"unknown (ell out of range): {result['unknown']}")
        return "\n".join(lines)
    if cmd == "lowrank":
        return "\n".join(
            f"#Q({r['x']}) = {r['count']} (count/x^(2 gamma) = {r['ratio']:.6g})" for r in result["rows"]
        )
    if cmd == "ellsum":
        return f"sum 1/ell(n), n <= {result['limit']}: {result['sum']} ~ {result['float_value']:.15g}"
    if cmd == "nonmult":
        return (
            f"k = {result['k']}: measured density {result['density_float']:.6g}, "
            f"Heilbronn bound {result['heilbronn_float']:.6g} "
            f"({result['generators']} distinct generators, p <= {result['pbound']})"
        )
    if cmd == "witnesses":
        return f"A_{result['k']} up to {result['limit']}: {result['witnesses']}"
    raise ValueError(f"unknown command {cmd}")  # pragma: no cover


def _emit(cmd, params, result, warnings, table, fmt):
    if fmt == "json":
        record = {
            "schema_version": SCHEMA_VERSION,
            "command": cmd,
            "params": params,
            "result": result,
            "warnings": warnings,
        }
        print(json.dumps(record, separators=(",", ":")))
        return
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    if fmt == "csv":
        header, rows = table
        print(f"# fibrank schema_version={SCHEMA_VERSION} command={cmd}")
        print(",".join(header))
        for row in rows:
            print(",".join(str(row[h]) for h in header))
        return
    print(_render_text(cmd, result))


def main(argv=None) -> int:
    # exact rationals from deep truncations stringify to far more digits than
    # CPython's default int-to-str conversion guard allows
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        params, result, warnings, table = _dispatch(args)
    except (RankUndefinedError, NonMemberError) as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 3
    except OutOfRangeError as exc:
        print(f"error: out-of-range: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    _emit(args.command, params, result, warnings, table, args.fmt)
    return 0


def entry():  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    entry()
