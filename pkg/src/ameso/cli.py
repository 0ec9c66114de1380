"""
ameso command line
Verify Ameso certificates, run the one-dimensional solver and ARP with traces,
solve shipping instances, and benchmark the solvers against brute force.

Exit codes: 0 ok, 1 usage or argument error, 2 not an Ameso set,
3 oracle cap exceeded, 4 start outside the domain, 5 non-box domain for arp,
6 objective evaluation error.
"""

import argparse
import logging
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from .arp import ArpConfig, flat_projection, solve_arp
from .bench import SUITES, BenchRow, run_bench
from .config import Settings
from .errors import (
    AmesoError,
    ArgumentError,
    DimensionMismatchError,
    DomainError,
    EvaluationError,
    NotAmesoSetError,
    ResourceLimitError,
    StartOutsideDomainError,
)
from .formats import (
    load_knapsack,
    load_table,
    write_csv,
    write_json,
    write_projection,
    write_trace,
)
from .lattice import Domain, as_box
from .models import (
    EXAMPLE3_DOMAIN,
    EXAMPLE6_DOMAIN,
    KnapsackInstance,
    example2_set,
    example3_objective,
    example5_table,
    example6_objective,
    knapsack_domain,
    knapsack_midpoint_witness,
    knapsack_objective,
)
from .oracle import Objective, brute_force_min, certify, minimal_C
from .solver1d import Solve1DConfig, solve_1d

logger = logging.getLogger("ameso")

LOG_FORMAT = "[ameso] %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_AMESO = 2
EXIT_CAP = 3
EXIT_START = 4
EXIT_NON_BOX = 5
EXIT_EVALUATION = 6

# most specific first
_EXIT_CODES: Tuple[Tuple[type, int], ...] = (
    (NotAmesoSetError, EXIT_NOT_AMESO),
    (ResourceLimitError, EXIT_CAP),
    (StartOutsideDomainError, EXIT_START),
    (EvaluationError, EXIT_EVALUATION),
    (ArgumentError, EXIT_USAGE),
    (DimensionMismatchError, EXIT_USAGE),
    (DomainError, EXIT_NON_BOX),
)


def exit_code_for(err: AmesoError) -> int:
    for cls, code in _EXIT_CODES:
        if isinstance(err, cls):
            return code
    return EXIT_USAGE


@dataclass
class Problem:
    """A loaded input: domain, objective (None for a bare domain) and file C"""
    name: str
    domain: Domain
    objective: Optional[Objective]
    C: Optional[float] = None


def _builtin(name: str) -> Optional[Problem]:
    if name == "example3":
        return Problem(name, EXAMPLE3_DOMAIN, example3_objective())
    if name == "example5":
        table = example5_table()
        return Problem(name, table.domain, table)
    if name == "example6":
        # the example states the Ameso constant 1 for this surface
        return Problem(name, EXAMPLE6_DOMAIN, example6_objective(), 1.0)
    if name in ("A1", "A2", "A3", "A4", "A5"):
        return Problem(name, example2_set(name), None)
    return None


BUILTINS = ("example3", "example5", "example6", "A1", "A2", "A3", "A4", "A5")


def load_problem(source: str) -> Problem:
    problem = _builtin(source)
    if problem is not None:
        return problem
    path = Path(source)
    if not path.exists():
        raise ArgumentError(f"{source}: not a built-in ({', '.join(BUILTINS)}) or an existing file")
    domain, objective, C = load_table(path)
    return Problem(path.stem, domain, objective, C)


def _require_objective(problem: Problem) -> Objective:
    if problem.objective is None:
        raise ArgumentError(f"{problem.name} has a domain but no values")
    return problem.objective


def resolve_C(flag: Optional[float], problem: Problem, settings: Settings) -> Tuple[float, Optional[float]]:
    """
    C from the flag, else the file, else the oracle on small domains.
    Returns (C, known minimal C or None).
    """
    if flag is not None:
        return flag, None
    if problem.C is not None:
        return problem.C, None
    size = len(problem.domain)
    if size > settings.auto_c_cap:
        raise ArgumentError(
            f"{problem.name} has {size} points, above the auto-C cap of {settings.auto_c_cap}; pass --C"
        )
    f = _require_objective(problem)
    cert = minimal_C(problem.domain, f, settings)
    # solver evaluation counts start after the oracle pass
    f.reset_count()
    logger.info("C from the oracle: %s", cert.minimal_C)
    return cert.minimal_C, cert.minimal_C


def parse_ints(raw: Optional[str], what: str) -> Optional[List[int]]:
    if raw is None:
        return None
    try:
        return [int(v) for v in raw.split(",") if v.strip()]
    except ValueError:
        raise ArgumentError(f"{what} must be comma-separated integers, got {raw!r}") from None


def _summary(line: str, out: Optional[str]) -> None:
    # stdout carries the machine report when --out is absent
    if out is not None:
        print(line)
    else:
        logger.info(line)


# Commands

def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    problem = load_problem(args.input)
    cert = certify(problem.domain, problem.objective, settings)
    write_json(cert.to_dict(), args.out)
    if not cert.is_ameso_set:
        a, b = cert.witness  # type: ignore[misc]
        print(f"[ameso] {problem.name}: not an Ameso set, midpoint of {a} and {b} escapes",
              file=sys.stderr)
        return EXIT_NOT_AMESO
    _summary(f"{problem.name}: Ameso set, minimal C = {cert.minimal_C}", args.out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, settings: Settings) -> int:
    problem = load_problem(args.input)
    f = _require_objective(problem)
    C, known = resolve_C(args.C, problem, settings)
    start = parse_ints(args.start, "--start")
    if start is not None and len(start) != 1:
        raise ArgumentError("solve takes a single start point")
    cfg = Solve1DConfig(C=C, start=start[0] if start else None,
                        value_tolerance=args.tolerance, known_minimal_C=known)
    report = solve_1d(problem.domain, f, cfg, settings)  # type: ignore[arg-type]
    if args.format == "csv":
        write_trace(report, args.out)
    else:
        write_json(report.to_dict(), args.out)
    if args.trace:
        write_trace(report, args.trace)
    _summary(f"{problem.name}: argmin {report.argmin}, min {report.min_value}, "
             f"{report.evaluations} evaluations", args.out)
    return EXIT_OK


def _arp_config(args: argparse.Namespace, C: float, known: Optional[float],
                domain: Domain) -> ArpConfig:
    order = parse_ints(args.axis_order, "--axis-order")
    start = parse_ints(args.start, "--start")
    n = domain.dimension
    starts: Optional[Dict[int, int]] = None
    if start is not None:
        if len(start) == n:
            starts = dict(enumerate(start))
        elif len(start) == 1:
            top = (order or list(range(n)))[-1]
            starts = {top: start[0]}
        else:
            raise ArgumentError(f"--start needs 1 or {n} values, got {len(start)}")
    return ArpConfig(C=C, axis_order=tuple(order) if order else None, start_points=starts,
                     memoize=not args.no_memoize, value_tolerance=args.tolerance,
                     known_minimal_C=known)


def cmd_arp(args: argparse.Namespace, settings: Settings) -> int:
    problem = load_problem(args.input)
    as_box(problem.domain)
    f = _require_objective(problem)
    C, known = resolve_C(args.C, problem, settings)
    cfg = _arp_config(args, C, known, problem.domain)
    report = solve_arp(problem.domain, f, cfg, settings)
    if args.format == "csv":
        write_projection(flat_projection(report), args.out)
    else:
        write_json(report.to_dict(), args.out)
    if args.trace:
        write_trace(report.top, args.trace)
    _summary(f"{problem.name}: argmin {report.argmin}, min {report.min_value}, "
             f"{report.total_evaluations} evaluations", args.out)
    return EXIT_OK


def _knapsack_instance(args: argparse.Namespace) -> KnapsackInstance:
    if args.input:
        return load_knapsack(args.input)
    w, c = parse_ints(args.w, "--w"), parse_ints(args.c, "--c")
    if args.W is None or w is None or c is None:
        raise ArgumentError("give an instance file or all of --W, --w and --c")
    if len(w) != 3 or len(c) != 3:
        raise ArgumentError("--w and --c take three comma-separated integers")
    return KnapsackInstance(args.W, tuple(w), tuple(c))  # type: ignore[arg-type]


def cmd_knapsack(args: argparse.Namespace, settings: Settings) -> int:
    inst = _knapsack_instance(args)
    domain = knapsack_domain(inst)
    cert = minimal_C(domain, knapsack_objective(inst), settings)
    C = args.C if args.C is not None else inst.c[2]
    f = knapsack_objective(inst)
    cfg = _arp_config(args, C, cert.minimal_C, domain)
    report = solve_arp(domain, f, cfg, settings)
    brute = brute_force_min(domain, knapsack_objective(inst))
    witness = knapsack_midpoint_witness(inst)
    result = {
        "instance": inst.to_dict(),
        "domain": str(domain),
        "certificate": cert.to_dict(),
        "ameso_c3_holds": cert.minimal_C <= inst.c[2],
        "C": C,
        "arp": {
            "argmin": list(report.argmin.coords),
            "min_value": report.min_value,
            "total_evaluations": report.total_evaluations,
            "certificate_unverified": report.certificate_unverified,
        },
        "brute_force": {
            "argmin_set": [list(p.coords) for p in brute.argmin_set],
            "min_value": brute.min_value,
            "evaluations": brute.evaluations,
        },
        "agree": report.min_value == brute.min_value,
        "midpoint_convexity_witness": [list(p.coords) for p in witness] if witness else None,
    }
    write_json(result, args.out)
    if args.trace:
        write_trace(report.top, args.trace)
    _summary(f"knapsack W={inst.W}: cost {report.min_value} at {report.argmin}, "
             f"brute force {brute.min_value}", args.out)
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, settings: Settings) -> int:
    seed = settings.seed if args.seed is None else args.seed
    summary = run_bench(args.suite, seed=seed, workers=args.workers, count=args.count,
                        C=args.C, W=args.W, settings=settings)
    rows = [r.as_row() for r in summary.rows]
    if args.format == "json":
        header = BenchRow.header()
        write_json([dict(zip(header, r)) for r in rows], args.out)
    else:
        write_csv(BenchRow.header(), rows, args.out)
    _summary(f"bench {args.suite}: {len(rows)} instances, agreement {summary.agreement_rate:.3f}, "
             f"mean evaluations {summary.mean_solver_evaluations:.1f} "
             f"vs {summary.mean_brute_force_evaluations:.1f}", args.out)
    return EXIT_OK if not summary.failed else EXIT_USAGE


COMMANDS: Dict[str, Callable[[argparse.Namespace, Settings], int]] = {
    "verify": cmd_verify,
    "solve": cmd_solve,
    "arp": cmd_arp,
    "knapsack": cmd_knapsack,
    "bench": cmd_bench,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-o', '--out', help='write the report here instead of stdout')
    common.add_argument('--format', choices=('json', 'csv'), default=None,
                        help='report format (default json; csv for bench)')
    common.add_argument('--tolerance', type=float,
                        default=None, help='epsilon for real-valued stopping gaps')
    common.add_argument('-d', '--debug', action='store_true')

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument('--C', type=float, help='Ameso constant (default: file, then oracle)')
    solver.add_argument('--start', help='start point, e.g. 13 or 80 or 5,7')
    solver.add_argument('--trace', help='write the top-level sweep trace CSV here')

    ap = argparse.ArgumentParser(prog="ameso",
                                 description="Ameso(C) discrete minimization on integer lattices.")
    ap.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="certify an Ameso set / Ameso(C) pair")
    p.add_argument('input', help=f"built-in ({', '.join(BUILTINS)}) or table file (.json/.csv)")

    p = sub.add_parser("solve", parents=[common, solver], help="one-dimensional sweep")
    p.add_argument('input', help="built-in or 1-D table file")

    arp_opts = argparse.ArgumentParser(add_help=False)
    arp_opts.add_argument('--axis-order', help='permutation of axes, last one swept at the top')
    arp_opts.add_argument('--no-memoize', action='store_true')

    p = sub.add_parser("arp", parents=[common, solver, arp_opts], help="recursive procedure on a box")
    p.add_argument('input', help="built-in or table file over a box")

    p = sub.add_parser("knapsack", parents=[common, solver, arp_opts],
                       help="three-option shipping cost: certificate, ARP and brute force")
    p.add_argument('input', nargs='?', help="instance JSON {W, w, c}")
    p.add_argument('--W', type=int)
    p.add_argument('--w', help='capacities w1,w2,w3')
    p.add_argument('--c', help='costs c1,c2,c3')

    p = sub.add_parser("bench", parents=[common], help="solver vs brute force on a generated suite")
    p.add_argument('suite', choices=SUITES)
    p.add_argument('--seed', type=int, help='suite seed (default AMESO_SEED, then 0)')
    p.add_argument('--workers', type=int, default=1)
    p.add_argument('--count', type=int, help='number of generated instances')
    p.add_argument('--C', type=float, help='C for the example5 suite (default 7)')
    p.add_argument('--W', type=int, help='W for the knapsack suite (default 100)')
    return ap


def configure_logging(debug: bool) -> None:
    level = logging.DEBUG if debug else os.environ.get('AMESO_LOG_LEVEL', 'WARNING').upper()
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors; 2 means "not an Ameso set" here
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    if args.format is None:
        args.format = "csv" if args.command == "bench" else "json"
    try:
        configure_logging(args.debug)
        settings = Settings.from_env()
        return COMMANDS[args.command](args, settings)
    except AmesoError as e:
        print(f"[ameso] {e}", file=sys.stderr)
        return exit_code_for(e)
    except (OSError, ValueError) as e:
        print(f"[ameso] {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
