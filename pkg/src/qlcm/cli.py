"""``qlcm`` command line.

Exit codes: 0 when every check passes, 1 when a mathematical counterexample
turns up, 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import Optional, Sequence

from .bounds import BoundKind, bound_holds, bound_log2, log2_ratio
from .errors import DomainError, QlcmError
from .lcm_engine import prefix_stream
from .progression import k_index, make_progression
from .qcalc import q_binomial, q_factorial, q_int
from .verifier import SUITES, SweepGrid, c_ell_sequence, run_sweep
from .worked_examples import all_rows

EXIT_OK, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2

TABLE_COLUMNS = [
    "n", "u_n", "lcm_bits", "k_n", "ell_n", "C_ell_log2",
    "t2_bound_log2", "t3_bound_log2", "t2_holds", "t3_holds", "slack_log2",
]
TABLE_COLUMNS_Q1 = [
    "n", "u_n", "lcm_bits", "k_n", "ell_n", "C_ell_log2",
    "hf_bound_log2", "hf_holds", "slack_log2",
]
RECORD_COLUMNS = ["q", "r", "u0", "n", "lcm_bits", "k_n", "ell_n"] + [
    k.value for k in BoundKind
] + ["slack_log2"]


class UsageError(QlcmError):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """``"a..b"`` (inclusive) or a single integer ``"a"``."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo, hi = int(lo), int(hi)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer or a..b range: {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def resolve_jobs(flag: Optional[int]) -> int:
    if flag is not None:
        return flag
    env = os.environ.get("QLCM_JOBS")
    if env is None:
        return 1
    try:
        v = int(env)
    except ValueError:
        v = 0
    if v < 1:
        raise UsageError(f"QLCM_JOBS must be a positive integer, got {env!r}")
    return v


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def render(rows: list[dict], columns: list[str], fmt: str) -> str:
    if fmt == "json":
        out = [{c: row.get(c) for c in columns} for row in rows]
        return json.dumps(out, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for row in rows:
            w.writerow([_cell(row.get(c)) for c in columns])
        return buf.getvalue()
    cells = [columns] + [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
    return "".join(
        "  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() + "\n" for r in cells
    )


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_eval(args) -> int:
    if args.what == "qbinom":
        if args.k is None:
            raise UsageError("qbinom needs N and K")
        value = q_binomial(args.n, args.k, args.q)
    elif args.k is not None:
        raise UsageError(f"{args.what} takes a single argument")
    elif args.what == "qint":
        value = q_int(args.n, args.q)
    else:
        value = q_factorial(args.n, args.q)
    print(value)
    return EXIT_OK


def _record_row(rec) -> dict:
    row = {c: getattr(rec, c) for c in ("q", "r", "u0", "n", "lcm_bits", "k_n", "ell_n")}
    row.update({k.value: rec.verdicts.get(k.value) for k in BoundKind})
    row["slack_log2"] = rec.slack_log2
    return row


def cmd_verify(args) -> int:
    grid = SweepGrid(args.q, args.r, args.u0, args.n_max, args.seed, args.sample)
    result = run_sweep(grid, args.suite or None, jobs=resolve_jobs(args.jobs),
                       fail_fast=args.fail_fast)
    s = result.summary
    if args.format == "json":
        text = json.dumps(
            {"summary": s, "records": [_record_row(r) for r in result.records]},
            indent=2, sort_keys=True,
        ) + "\n"
    elif args.format == "csv":
        text = render([_record_row(r) for r in result.records], RECORD_COLUMNS, "csv")
    else:
        lines = [
            f"{s['checked']} checked, {s['skipped_gcd']} skipped (gcd), "
            f"{s['records']} records, {s['failures']} failures"
        ]
        for name, c in s["suite_counts"].items():
            lines.append(f"  {name:<13} pass={c['pass']} fail={c['fail']} n/a={c['not_applicable']}")
        if s["first_counterexample"]:
            lines.append("first counterexample: " + json.dumps(s["first_counterexample"]))
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    if not result.ok:
        print("counterexample: " + json.dumps(s["first_counterexample"]), file=sys.stderr)
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def table_rows(q: int, r: int, u0: int, n_max: int, full_values: bool = False) -> tuple[list[dict], list[str]]:
    """Per-n rows comparing the lcm with the applicable bounds."""
    p = make_progression(q, r, u0)
    columns = list(TABLE_COLUMNS if q >= 2 else TABLE_COLUMNS_Q1)
    if full_values:
        columns.append("lcm")
    if q >= 2:
        ells, cs = c_ell_sequence(p, n_max)
    rows = []
    for n, u, L in prefix_stream(p):
        if n > n_max:
            break
        row = {"n": n, "u_n": str(u), "lcm_bits": L.bit_length()}
        if full_values:
            row["lcm"] = str(L)
        if q >= 2:
            t2 = bound_holds(p, n, BoundKind.THEOREM2, lcm=L)
            t3 = bound_holds(p, n, BoundKind.THEOREM3, lcm=L)
            row.update(
                k_n=k_index(p, n), ell_n=ells[n], C_ell_log2=log2_ratio(cs[n], 1),
                t2_bound_log2=bound_log2(p, n, BoundKind.THEOREM2),
                t3_bound_log2=bound_log2(p, n, BoundKind.THEOREM3),
                t2_holds=t2.holds, t3_holds=t3.holds,
                slack_log2=min(t2.slack_log2, t3.slack_log2),
            )
        else:
            hf = bound_holds(p, n, BoundKind.HONG_FENG, lcm=L)
            row.update(
                hf_bound_log2=bound_log2(p, n, BoundKind.HONG_FENG),
                hf_holds=hf.holds, slack_log2=hf.slack_log2,
            )
        rows.append(row)
    return rows, columns


def cmd_table(args) -> int:
    for name in ("q", "r", "u0"):
        lo, hi = getattr(args, name)
        if lo != hi:
            raise UsageError(f"table takes a single --{name}, got a range")
    rows, columns = table_rows(args.q[0], args.r[0], args.u0[0], args.n_max, args.full_values)
    _emit(render(rows, columns, args.format), args.out)
    holds_cols = [c for c in columns if c.endswith("_holds")]
    if not all(row[c] for row in rows for c in holds_cols):
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def cmd_examples(args) -> int:
    rows = all_rows(args.n_max)
    columns = ["bullet", "sequence", "n", "lcm_bits", "holds", "route_agrees", "slack_log2"]
    if args.format == "text":
        lines = []
        for bullet in (1, 2, 3):
            mine = [r for r in rows if r.bullet == bullet]
            ok = all(r.holds for r in mine)
            worst = min(mine, key=lambda r: r.slack_log2)
            lines.append(
                f"bullet {bullet} ({mine[0].label}): n=1..{args.n_max} "
                f"{'all hold' if ok else 'FAILED'}; min slack {worst.slack_log2:.3f} bits at n={worst.n}"
            )
        text = "\n".join(lines) + "\n"
    else:
        text = render([r.to_dict() for r in rows], columns, args.format)
    _emit(text, args.out)
    return EXIT_OK if all(r.holds for r in rows) else EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--jobs", type=_positive, default=None,
                        help="worker processes (default: $QLCM_JOBS or 1)")
    common.add_argument("--fail-fast", action="store_true")
    common.add_argument("--n-max", type=_positive, default=10)
    common.add_argument("--q", type=parse_range, default=(2, 2))
    common.add_argument("--r", type=parse_range, default=(1, 1))
    common.add_argument("--u0", type=parse_range, default=(0, 0))
    common.add_argument("--full-values", action="store_true",
                        help="add the full decimal lcm to table output")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--sample", type=_positive, default=None,
                        help="check a seeded random subset of this many grid points")

    parser = argparse.ArgumentParser(prog="qlcm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="evaluate a q-integer, q-factorial or q-binomial")
    ev.add_argument("what", choices=("qint", "qfact", "qbinom"))
    ev.add_argument("n", type=int)
    ev.add_argument("k", type=int, nargs="?")
    ev.add_argument("--q", type=int, default=2)
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", parents=[common], help="run the property suites over a grid")
    ve.add_argument("--suite", action="append", choices=sorted(SUITES),
                    help="repeatable; default is every suite")
    ve.set_defaults(func=cmd_verify)

    ta = sub.add_parser("table", parents=[common], help="per-n bound table for one progression")
    ta.set_defaults(func=cmd_table)

    ex = sub.add_parser("examples", parents=[common], help="the 2^n-1, 2^n+1, 3^n+1 bounds")
    ex.set_defaults(func=cmd_examples, n_max=12)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, UsageError) as exc:
        print(f"qlcm: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
