"""Command-line front end: ``gia dims|patterns|plan|sweep|cache``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import cache
from .ia_math import (
    GIAError,
    OrthogonalRange,
    feasible_dims,
    format_decimal,
    interference_index,
    invert_dim,
    iter_ladder,
    mg_bf,
    virtual_users,
    Instance,
)
from .patterns import (
    EXHAUSTIVE_LIMIT,
    LimitError,
    PatternSet,
    generate,
    prune,
)
from .solvers import DP_CAPACITY_LIMIT, Plan, solve_brute, solve_greedy, solve_optimal

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_IO = 3

CSV_HEADER = ["M", "mg_bf_num", "mg_bf_den", "mg_bf", "mg_gia_num", "mg_gia_den",
              "mg_gia", "algo", "wall_ms"]


def parse_count(text: str) -> int:
    """Positive integer, also accepting forms like ``1e6``."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if value != value.to_integral_value() or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def frac_json(x: Fraction, decimal: bool = False) -> dict:
    out = {"num": x.numerator, "den": x.denominator}
    if decimal:
        out["decimal"] = format_decimal(x)
    return out


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cache_dir(args) -> Optional[Path]:
    if getattr(args, "cache_dir", None):
        return Path(args.cache_dir)
    env = os.environ.get(cache.ENV_VAR)
    return Path(env) if env else None


def _solve(ps: PatternSet, M: int, algo: str, instance: Instance, dp_limit: int) -> Plan:
    if algo == "optimal":
        return solve_optimal(ps, M, capacity_limit=dp_limit, instance=instance)
    if algo == "greedy":
        return solve_greedy(ps, M, instance=instance)
    return solve_brute(ps, M, instance=instance)


def cmd_dims(args) -> str:
    dims = feasible_dims(args.k, args.max)
    if isinstance(dims, OrthogonalRange):
        values = list(dims)
        note = "orthogonal multiplexing is MG optimal"
    else:
        values = [e.m for e in dims]
        note = None
    if args.format == "json":
        return json.dumps({"k": args.k, "max": args.max, "dims": values, "note": note}) + "\n"
    if args.format == "csv":
        return "m\n" + "".join(f"{m}\n" for m in values)
    text = ", ".join(str(m) for m in values) + "\n"
    if note:
        text += f"# {note}\n"
    return text


def cmd_patterns(args) -> str:
    K = virtual_users(args.k, args.t)
    if args.stage == "sorted":
        ps = cache.load_or_build(K, args.m, args.mode, _cache_dir(args), args.exhaustive_limit)
    else:
        ps = generate(K, args.m, "exhaustive", args.exhaustive_limit)
        if args.stage == "pruned":
            ps = prune(ps)
    entries = ps.entries if args.head is None else ps.entries[: args.head]
    if args.format == "json":
        return json.dumps({
            "K": ps.K, "M": ps.M, "mode": ps.mode, "stage": ps.stage, "W": ps.W,
            "entries": [
                {"k": e.k, "m": e.m, "n_star": e.n_star,
                 "v": frac_json(e.v, True), "rho": frac_json(e.rho, True)}
                for e in entries
            ],
        }) + "\n"
    buf = io.StringIO()
    if args.format == "csv":
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "m", "n_star", "v_num", "v_den", "v", "rho"])
        for e in entries:
            w.writerow([e.k, e.m, e.n_star, e.v.numerator, e.v.denominator,
                        format_decimal(e.v), format_decimal(e.rho)])
        return buf.getvalue()
    buf.write(f"K={ps.K} M={ps.M} mode={ps.mode} stage={ps.stage} W={ps.W}\n")
    for e in entries:
        buf.write(f"{{{e.k}, {e.m}, {format_decimal(e.v, 4)}}}  n*={e.n_star}  "
                  f"rho={format_decimal(e.rho, 5)}  v={e.v}\n")
    return buf.getvalue()


def bf_single(K: int, M: int) -> Optional[Fraction]:
    """MG of one K-user BF-IA group over all M dimensions, if M is on the ladder."""
    if K < 3:
        return None
    n_star = invert_dim(K, M)
    return None if n_star is None else mg_bf(K, n_star)


def cmd_plan(args) -> str:
    instance = Instance(args.k, args.t, args.m)
    K = instance.effective_users
    if args.algo == "optimal" and args.m > args.dp_limit:
        raise LimitError(f"capacity {args.m} too large for exact DP (limit {args.dp_limit}); use greedy")
    ps = cache.load_or_build(K, args.m, args.mode, _cache_dir(args), args.exhaustive_limit)
    plan = _solve(ps, args.m, args.algo, instance, args.dp_limit)
    bf = bf_single(K, args.m)
    if args.format == "json":
        doc = {
            "instance": {"k": args.k, "t": args.t, "m": args.m},
            "algo": args.algo,
            "choices": [
                {"k": p.k, "m": p.m, "n_star": p.n_star, "count": x, "v": frac_json(p.v)}
                for p, x in plan.choices
            ],
            "leftover": plan.leftover,
            "z": frac_json(plan.z),
            "total_mg": frac_json(plan.total_mg, True),
        }
        if bf is not None:
            doc["bf_single"] = frac_json(bf, True)
            doc["improvement"] = frac_json(plan.total_mg / bf - 1, True)
        return json.dumps(doc) + "\n"
    lines = [
        f"K={args.k} T={args.t} K'={K} M={args.m} algo={args.algo}",
        f"partition: {' + '.join(str(m) for m in plan.parts) or '(none)'}",
    ]
    for p, x in plan.choices:
        lines.append(f"  {x} x {{{p.k}, {p.m}, {format_decimal(p.v, 4)}}}  n*={p.n_star}")
    lines.append(f"leftover: {plan.leftover}")
    lines.append(f"z = {plan.z} ~ {format_decimal(plan.z)}")
    lines.append(f"total MG = {plan.total_mg} ~ {format_decimal(plan.total_mg)}")
    if K >= 3:
        lines.append(f"N' = {interference_index(K)}")
    if bf is not None:
        gain = plan.total_mg / bf - 1
        lines.append(f"BF-IA single group MG = {bf} ~ {format_decimal(bf)}")
        lines.append(f"improvement over BF-IA: {format_decimal(100 * gain, 4)}%")
    return "\n".join(lines) + "\n"


def sweep_points(K: int, M_max: int, algo: str = "greedy", *, M_min: int = 1,
                 mode: str = "auto", any_m: bool = False, step: int = 1,
                 cache_dir=None, exhaustive_limit: int = EXHAUSTIVE_LIMIT,
                 dp_limit: int = DP_CAPACITY_LIMIT, timing: bool = True) -> List[dict]:
    """One record per sampled M, ascending; BF-IA column only on ladder points."""
    if any_m:
        ms = [m for m in range(step, M_max + 1, step) if m >= M_min]
    elif K >= 3:
        ms = [e.m for e in iter_ladder(K, M_max) if e.m >= M_min]
    else:
        ms = []
    if not ms:
        return []
    if algo == "optimal" and ms[-1] > dp_limit:
        raise LimitError(f"capacity {ms[-1]} too large for exact DP (limit {dp_limit}); use greedy")
    top = cache.load_or_build(K, ms[-1], mode, cache_dir, exhaustive_limit)
    rows = []
    for M in ms:
        t0 = time.perf_counter()
        ps = top.restrict(M)
        plan = _solve(ps, M, algo, Instance(K, 1, M), dp_limit)
        wall = int(round((time.perf_counter() - t0) * 1000)) if timing else 0
        rows.append({"M": M, "mg_bf": bf_single(K, M), "mg_gia": plan.total_mg,
                     "algo": algo, "wall_ms": wall})
    return rows


def render_sweep(rows: List[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([
            {"M": r["M"],
             "mg_bf": None if r["mg_bf"] is None else frac_json(r["mg_bf"], True),
             "mg_gia": frac_json(r["mg_gia"], True),
             "algo": r["algo"], "wall_ms": r["wall_ms"]}
            for r in rows
        ]) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        bf = r["mg_bf"]
        bf_cols = ["", "", ""] if bf is None else [bf.numerator, bf.denominator, format_decimal(bf)]
        gia = r["mg_gia"]
        w.writerow([r["M"], *bf_cols, gia.numerator, gia.denominator, format_decimal(gia),
                    r["algo"], r["wall_ms"]])
    return buf.getvalue()


def cmd_sweep(args) -> str:
    K = virtual_users(args.k, args.t)
    rows = sweep_points(K, args.max, args.algo, M_min=args.min, mode=args.mode,
                        any_m=args.any_m, step=args.step, cache_dir=_cache_dir(args),
                        exhaustive_limit=args.exhaustive_limit, dp_limit=args.dp_limit,
                        timing=not args.no_timing)
    fmt = "json" if args.format == "json" else "csv"
    return render_sweep(rows, fmt)


def cmd_cache(args) -> str:
    cache_dir = _cache_dir(args) or cache.default_cache_dir()
    if args.action == "warm":
        if args.k is None or args.m is None:
            raise GIAError("cache warm needs --k and --m")
        K = virtual_users(args.k, args.t)
        ps = cache.load_or_build(K, args.m, args.mode, cache_dir, args.exhaustive_limit)
        return f"{cache.cache_path(cache_dir, ps.K, ps.M, ps.mode)} W={ps.W}\n"
    files = sorted(cache_dir.glob("gia-*.txt")) if cache_dir.exists() else []
    if args.action == "clear":
        for f in files:
            f.unlink()
        return f"removed {len(files)} file(s) from {cache_dir}\n"
    return "".join(f"{f}\n" for f in files)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gia", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, m_required=True):
        p.add_argument("--k", type=parse_count, required=m_required, help="number of users")
        p.add_argument("--t", type=parse_count, default=1, help="antennas per user")
        p.add_argument("--mode", choices=["auto", "exhaustive", "sparse"], default="auto")
        p.add_argument("--cache-dir", help=f"pattern cache directory (env {cache.ENV_VAR})")
        p.add_argument("--exhaustive-limit", type=parse_count, default=EXHAUSTIVE_LIMIT)
        p.add_argument("--out", help="write output to this file")

    p = sub.add_parser("dims", help="feasible extended-channel dimensions")
    p.add_argument("--k", type=parse_count, required=True)
    p.add_argument("--max", type=parse_count, required=True)
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.add_argument("--out")
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("patterns", help="group-pattern set for (K, M)")
    common(p)
    p.add_argument("--m", type=parse_count, required=True)
    p.add_argument("--stage", choices=["raw", "pruned", "sorted"], default="sorted")
    p.add_argument("--head", type=int, help="show only the first N entries")
    p.add_argument("--format", choices=["table", "csv", "json"], default="table")
    p.set_defaults(func=cmd_patterns)

    p = sub.add_parser("plan", help="partition M dimensions into groups")
    common(p)
    p.add_argument("--m", type=parse_count, required=True)
    p.add_argument("--algo", choices=["optimal", "greedy", "brute"], default="greedy")
    p.add_argument("--dp-limit", type=parse_count, default=DP_CAPACITY_LIMIT)
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("sweep", help="GIA vs BF-IA over a range of M")
    common(p)
    p.add_argument("--max", type=parse_count, required=True)
    p.add_argument("--min", type=parse_count, default=1)
    p.add_argument("--algo", choices=["optimal", "greedy", "brute"], default="greedy")
    p.add_argument("--dp-limit", type=parse_count, default=DP_CAPACITY_LIMIT)
    p.add_argument("--any-m", action="store_true",
                   help="sample every --step dimensions instead of ladder points only")
    p.add_argument("--step", type=parse_count, default=1)
    p.add_argument("--no-timing", action="store_true", help="write wall_ms as 0")
    p.add_argument("--format", choices=["csv", "json", "table"], default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("cache", help="manage the pattern-set cache")
    common(p, m_required=False)
    p.add_argument("action", choices=["warm", "list", "clear"])
    p.add_argument("--m", type=parse_count)
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        text = args.func(args)
        _emit(text, getattr(args, "out", None))
    except GIAError as exc:
        print(f"gia: error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except OSError as exc:
        print(f"gia: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
