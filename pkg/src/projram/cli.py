"""Command-line interface.

Exit codes: 0 success, 2 no consensus, 4 budget exhausted, 64 usage error.
Budgets default to ``PROJRAM_BUDGET_STEPS`` / ``PROJRAM_BUDGET_SECS`` when set.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

from .degree import RunConfig, phi, veronese_degree
from .ff import DEFAULT_PRIMES
from .groebner import Budget
from .groebner.core import DEFAULT_STEP_BUDGET, DEFAULT_TIME_BUDGET
from .schubert import catalan_closed, plucker_degree
from .scroll import Partition
from .variation import is_maximal_variation

EXIT_OK = 0
EXIT_NO_CONSENSUS = 2
EXIT_BUDGET = 4
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _partition(text):
    try:
        return Partition(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"invalid partition {text!r}: {exc}") from None


def _primes(text):
    try:
        primes = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid prime list {text!r}") from None
    if not primes:
        raise argparse.ArgumentTypeError("at least one prime is required")
    return primes


def _positive(kind):
    def parse(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"invalid value {text!r}") from None
        if v <= 0:
            raise argparse.ArgumentTypeError("must be positive")
        return v
    return parse


def _env_default(name, kind, fallback):
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        v = kind(raw)
    except ValueError:
        raise UsageError(f"{name}={raw!r} is not a number") from None
    if v <= 0:
        raise UsageError(f"{name} must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--primes", type=_primes, default=DEFAULT_PRIMES[:2],
                        help="comma-separated primes (default: %(default)s)")
    common.add_argument("--trials", type=_positive(int), default=3, help="trials per prime")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget-steps", type=_positive(int), default=None,
                        help=f"reduction steps per basis (default {DEFAULT_STEP_BUDGET})")
    common.add_argument("--budget-secs", type=_positive(float), default=None,
                        help=f"seconds per basis (default {DEFAULT_TIME_BUDGET:g})")
    common.add_argument("--format", choices=("json", "csv", "text"), default=None,
                        help="output format (default: csv for table, text for selftest, json otherwise)")
    common.add_argument("--kernel", choices=("python", "cython"), default=None,
                        help="reduction kernel (default: compiled when available)")
    common.add_argument("--no-timings", action="store_true",
                        help="zero the per-trial timings so replays are byte-identical")

    parser = _Parser(prog="projram", description="Degrees of projection-ramification maps over F_p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("phi", parents=[common], help="degree for a scroll")
    p.add_argument("partition", type=_partition)
    p = sub.add_parser("rank", parents=[common], help="maximal variation test")
    p.add_argument("partition", type=_partition)
    p = sub.add_parser("catalan", parents=[common], help="Pluecker degree of Gr(2, n+1)")
    p.add_argument("n", type=int)
    sub.add_parser("veronese", parents=[common], help="degree for nets of conics")
    p = sub.add_parser("table", parents=[common], help="rank-2 table as lower-triangular CSV")
    p.add_argument("--max-d", type=_positive(int), default=5)
    sub.add_parser("selftest", parents=[common], help="quick invariant checks")
    return parser


def config_from_args(args) -> RunConfig:
    steps = args.budget_steps or _env_default("PROJRAM_BUDGET_STEPS", int, DEFAULT_STEP_BUDGET)
    secs = args.budget_secs or _env_default("PROJRAM_BUDGET_SECS", float, DEFAULT_TIME_BUDGET)
    try:
        return RunConfig(primes=tuple(args.primes), trials=args.trials, seed=args.seed,
                         budget=Budget(steps=steps, seconds=secs), kernel=args.kernel)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def exit_code(report) -> int:
    if report.agreement:
        return EXIT_OK
    return EXIT_BUDGET if report.exhausted else EXIT_NO_CONSENSUS


# ---------------------------------------------------------------------------
# rendering


def _report_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["partition", "degree", "agreement", "prime", "seed", "value", "zero_dim", "ms"])
    d = report.to_dict()
    part = d["partition"] if isinstance(d["partition"], str) else ",".join(map(str, d["partition"]))
    for t in d["trials"]:
        w.writerow([part, "" if d["degree"] is None else d["degree"], d["agreement"],
                    t["prime"], t["seed"], "" if t["value"] is None else t["value"],
                    t["zero_dim"], t["ms"]])
    return buf.getvalue().rstrip("\n")


def _report_text(report) -> str:
    d = report.to_dict()
    name = d["partition"] if isinstance(d["partition"], str) else tuple(d["partition"])
    head = f"{name}: degree {d['degree'] if d['degree'] is not None else 'unknown'}"
    head += "" if d["agreement"] else " (no consensus)"
    lines = [head]
    for t in d["trials"]:
        val = "budget" if t["value"] is None else t["value"]
        dim = "zero-dim" if t["zero_dim"] else "positive-dim" if t["value"] is not None else "-"
        lines.append(f"  p={t['prime']} seed={t['seed']} value={val} {dim} {t['ms']}ms")
    return "\n".join(lines)


def render_degree(report, fmt, timings=True) -> str:
    if fmt == "csv":
        return _report_csv(report) if timings else _report_csv(_strip(report))
    if fmt == "text":
        return _report_text(report)
    return report.to_json(timings)


def _strip(report):
    for t in report.trials:
        t.ms = 0
    return report


def table_cells(max_d, config):
    """Reports keyed by ``(small, large)`` for every rank-2 partition of degree <= max_d."""
    out = {}
    for large in range(1, max_d):
        for small in range(1, large + 1):
            if small + large <= max_d:
                out[(small, large)] = phi((small, large), config)
    return out


def _cell(report):
    if report.agreement:
        return str(report.degree)
    return "skipped" if report.exhausted else "disagree"


def render_table(cells, max_d, fmt, timings=True) -> str:
    if fmt == "json":
        return json.dumps([rep.to_dict(timings) for rep in cells.values()], separators=(",", ":"))
    # rows a1 (the larger part), columns a2, lower triangular
    size = max_d - 1
    rows = [["a1\\a2"] + [str(j) for j in range(1, size + 1)]]
    for a1 in range(1, size + 1):
        row = [str(a1)]
        for a2 in range(1, size + 1):
            rep = cells.get((a2, a1))
            row.append(_cell(rep) if rep is not None else "")
        rows.append(row)
    if fmt == "text":
        width = max(len(c) for r in rows for c in r)
        return "\n".join(" ".join(c.rjust(width) for c in r).rstrip() for r in rows)
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def render_rank(report, fmt) -> str:
    d = report.to_dict()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["partition", "dim_gr", "rank", "maximal_variation", "prime", "seed", "trial_rank"])
        for t in d["trials"]:
            w.writerow([",".join(map(str, d["partition"])), d["dim_gr"], d["rank"],
                        d["maximal_variation"], t["prime"], t["seed"], t["rank"]])
        return buf.getvalue().rstrip("\n")
    if fmt == "text":
        verdict = "maximal variation" if d["maximal_variation"] else "not maximal variation"
        return f"{tuple(d['partition'])}: rank {d['rank']} of {d['dim_gr']}, {verdict}"
    return report.to_json()


# ---------------------------------------------------------------------------
# commands


def cmd_phi(args, config):
    report = phi(args.partition, config)
    print(render_degree(report, args.format, not args.no_timings))
    return exit_code(report)


def cmd_veronese(args, config):
    report = veronese_degree(config)
    print(render_degree(report, args.format, not args.no_timings))
    return exit_code(report)


def cmd_rank(args, config):
    report = is_maximal_variation(args.partition, trials=args.trials, seed=args.seed,
                                  p=config.primes[0])
    print(render_rank(report, args.format))
    return EXIT_OK


def cmd_catalan(args, config):
    if args.n < 2:
        raise UsageError("catalan needs n >= 2")
    value = plucker_degree(2, args.n + 1)
    closed = catalan_closed(args.n)
    if value != closed:
        raise AssertionError(f"Pieri count {value} differs from the closed form {closed}")
    if args.format == "json":
        print(json.dumps({"n": args.n, "plucker_degree": value, "catalan": closed},
                         separators=(",", ":")))
    elif args.format == "csv":
        print(f"n,plucker_degree,catalan\n{args.n},{value},{closed}")
    else:
        print(value)
    return EXIT_OK


def cmd_table(args, config):
    cells = table_cells(args.max_d, config)
    print(render_table(cells, args.max_d, args.format, not args.no_timings))
    if any(not r.agreement and r.exhausted for r in cells.values()):
        return EXIT_BUDGET
    if any(not r.agreement for r in cells.values()):
        return EXIT_NO_CONSENSUS
    return EXIT_OK


def cmd_selftest(args, config):
    from .selftest import run_all

    results = run_all()
    if args.format == "json":
        print(json.dumps([{"check": n, "passed": ok, "detail": d} for n, ok, d in results],
                         separators=(",", ":")))
    elif args.format == "csv":
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows([["check", "passed", "detail"], *results])
        print(buf.getvalue().rstrip("\n"))
    else:
        for name, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'} {name}" + (f": {detail}" if detail else ""))
    return EXIT_OK if all(ok for _, ok, _ in results) else 1


COMMANDS = {
    "phi": cmd_phi,
    "rank": cmd_rank,
    "catalan": cmd_catalan,
    "veronese": cmd_veronese,
    "table": cmd_table,
    "selftest": cmd_selftest,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    # parents share action objects, so per-command defaults are resolved here
    if args.format is None:
        args.format = {"table": "csv", "selftest": "text"}.get(args.command, "json")
    try:
        config = config_from_args(args)
        return COMMANDS[args.command](args, config)
    except UsageError as exc:
        print(f"projram: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
