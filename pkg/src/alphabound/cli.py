"""Command-line interface: ``alphabound {analyze,sweep,construct,constants,calibrate}``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys

from . import __version__
from .bounds import InfeasibleError, solve_constant_chain, theorem1_threshold, theorem2_threshold
from .cliques import count_cliques
from .constructions import KINDS, LEFTOVER_MODES, build_construction
from .harness import (
    CSV_COLUMNS,
    analyze_graph,
    calibrate,
    load_fitted_constants,
    log_grid,
    regime_slopes,
    sweep,
    write_csv,
)
from .indset import DEFAULT_ORACLE_CAP, DEFAULT_RETRIES, aks_greedy, exact_alpha
from .io import FORMATS, GraphFormatError, load_graph, save_graph

logger = logging.getLogger("alphabound")

CSV_HELP = (
    "CSV columns, in order: " + ",".join(CSV_COLUMNS) + ". "
    "t is the clique count of the graph in the row; bound_* are lower bounds on alpha "
    "(bound_t2/bound_aks use the fitted constants); alg_best_size is the largest verified "
    "independent set; exact_alpha is blank above the oracle cap; runtime_ms is blank "
    "unless --timing is given. Plot with e.g. gnuplot: "
    "set datafile separator ','; set logscale xy; plot 'out.csv' using 5:12."
)


class UsageError(Exception):
    pass


def _parse_int_list(text: str) -> list[int]:
    """'0,5,9' or '0-9' (inclusive range) or a mix of both."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        lo, sep, hi = part.partition("-")
        if sep and lo:
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(float(part)))
    return out


def _parse_t_grid(text: str) -> list[int]:
    """Comma list, or 'log:LO:HI:COUNT' for a logarithmic grid."""
    if text.startswith("log:"):
        try:
            _, lo, hi, count = text.split(":")
            return log_grid(float(lo), float(hi), int(count))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad log grid {text!r}; use log:LO:HI:COUNT") from None
    try:
        return _parse_int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad t grid {text!r}") from None


def _seeds(text: str) -> list[int]:
    try:
        return _parse_int_list(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from None


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="alphabound",
        description="Independence number of graphs with a prescribed number of cliques.",
        epilog=CSV_HELP,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report bounds and algorithm results for a graph file",
                       epilog=CSV_HELP)
    p.add_argument("path")
    p.add_argument("--format", choices=FORMATS, default="dimacs")
    p.add_argument("--s", type=int, default=3, help="clique order (default 3)")
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    p.add_argument("--csv", action="store_true", help="emit one CSV row instead of text")
    p.add_argument("--timing", action="store_true", help="fill the runtime_ms column")
    p.add_argument("--constants", help="fitted-constants JSON (default: packaged values)")

    p = sub.add_parser("sweep", help="CSV of bounds and independent sets across a t grid",
                       epilog=CSV_HELP)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--t-grid", type=_parse_t_grid, required=True,
                   help="comma list, or log:LO:HI:COUNT")
    p.add_argument("--seeds", type=_seeds, default=[0], help="comma list or inclusive range a-b")
    p.add_argument("--seed", type=_u64, default=None, help="shorthand for --seeds SEED")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)
    p.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    p.add_argument("--csv", action="store_true", help="accepted for symmetry; output is always CSV")
    p.add_argument("--timing", action="store_true", help="fill the runtime_ms column")
    p.add_argument("--summary", action="store_true",
                   help="print log-log slopes below/above the regime threshold to stderr")
    p.add_argument("--out", help="write CSV here instead of standard output")
    p.add_argument("--constants", help="fitted-constants JSON (default: packaged values)")

    p = sub.add_parser("construct", help="write a sharpness construction and its spec")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--seed", type=_u64, default=0)
    p.add_argument("--out", required=True, help="graph file; the spec goes to OUT.spec")
    p.add_argument("--format", choices=FORMATS, default="dimacs")
    p.add_argument("--exact-t", dest="exact_t", action=argparse.BooleanOptionalAction, default=None,
                   help="hit t exactly (default: on for clique_plus_trianglefree, off for lex_blowup)")
    p.add_argument("--leftover", choices=LEFTOVER_MODES, default="isolated")
    p.add_argument("--oracle-cap", type=int, default=DEFAULT_ORACLE_CAP)

    p = sub.add_parser("constants", help="print the constant chain and its residuals")
    p.add_argument("--s-max", type=int, default=5)
    p.add_argument("--c2", type=float, default=1 / 3)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("calibrate", help="refit the empirical bound constants")
    p.add_argument("--size", type=int, default=400)
    p.add_argument("--seed", type=_u64, default=None)
    p.add_argument("--slack", type=float, default=None)
    p.add_argument("--out", help="write JSON here instead of standard output")
    return parser


def cmd_analyze(args) -> int:
    g = load_graph(args.path, args.format)
    if not 2 <= args.s <= g.n:
        raise UsageError(f"--s must satisfy 2 <= s <= n={g.n}, got {args.s}")
    constants = load_fitted_constants(args.constants)
    report = analyze_graph(g, args.s, args.seed, args.oracle_cap, args.retries,
                           constants=constants, source=args.path)
    if args.csv:
        write_csv([report.csv_row("file", args.timing)], sys.stdout)
    else:
        print(report.text())
    return 0


def cmd_sweep(args) -> int:
    if args.n < 3 or not 2 <= args.s <= args.n:
        raise UsageError(f"need n >= 3 and 2 <= s <= n, got n={args.n}, s={args.s}")
    seeds = [args.seed] if args.seed is not None else args.seeds
    constants = load_fitted_constants(args.constants)
    rows = sweep(args.n, args.s, args.t_grid, seeds, args.oracle_cap, args.retries, constants, args.timing)
    collected = []

    def tee():
        for row in rows:
            collected.append(row)
            yield row

    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_csv(tee(), fh)
    else:
        write_csv(tee(), sys.stdout)
    if args.summary:
        thr = theorem2_threshold(args.n) if args.s == 3 else theorem1_threshold(args.n, args.s)
        for side, slope in regime_slopes(collected, thr).items():
            print(f"slope {side} t={thr:.6g}: {slope:.4f}", file=sys.stderr)
    return 0


def cmd_construct(args) -> int:
    g, spec = build_construction(args.kind, args.n, args.t, args.seed, args.exact_t, args.leftover)
    if g.n <= args.oracle_cap:
        alpha, _ = exact_alpha(g, args.oracle_cap)
        how = "exact"
    else:
        alpha = aks_greedy(g, args.seed).size
        how = "heuristic"
    spec.alpha_base = alpha
    save_graph(g, args.out, args.format)
    with open(f"{args.out}.spec", "w", encoding="utf-8") as fh:
        fh.write(spec.to_text())
    tri = count_cliques(g, 3).t if g.n >= 3 else 0
    print(f"wrote {args.out} ({g.n} vertices, {g.m} edges)")
    print(f"triangles {tri}")
    print(f"alpha {alpha} ({how})")
    return 0


def cmd_constants(args) -> int:
    if args.s_max < 2:
        raise UsageError("--s-max must be at least 2")
    chain = solve_constant_chain(args.s_max, args.c2)
    header = ["s", "c_s_prime", "c_s", "root", "resid_cap", "resid_recursion", "resid_sparsify"]
    table = [[2, "", f"{chain.c2:.10g}", "", "", "", ""]]
    for s, level in sorted(chain.levels.items()):
        r1, r2, r3 = chain.residuals(s)
        table.append([s, f"{level.cs_prime:.10g}", f"{level.cs:.10g}", f"{level.root:.10g}",
                      f"{r1:.6g}", f"{r2:.6g}", f"{r3:.6g}"])
    if args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(table)
    else:
        widths = [max(len(str(r[i])) for r in [header] + table) for i in range(len(header))]
        for r in [header] + table:
            print("  ".join(str(x).rjust(w) for x, w in zip(r, widths)))
        for s, delta in chain.deltas.items():
            print(f"delta(s={s}) = {delta:.10g}")
    return 0


def cmd_calibrate(args) -> int:
    kwargs = {"size": args.size}
    if args.seed is not None:
        kwargs["seed"] = args.seed
    if args.slack is not None:
        kwargs["slack"] = args.slack
    fitted = calibrate(**kwargs)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(fitted.to_json())
    else:
        sys.stdout.write(fitted.to_json())
    return 0


COMMANDS = {
    "analyze": cmd_analyze,
    "sweep": cmd_sweep,
    "construct": cmd_construct,
    "constants": cmd_constants,
    "calibrate": cmd_calibrate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"alphabound: error: {exc}", file=sys.stderr)
        return 2
    except (GraphFormatError, OSError, InfeasibleError) as exc:
        print(f"alphabound: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"alphabound: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        logger.debug("unhandled failure", exc_info=True)
        print(f"alphabound: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
