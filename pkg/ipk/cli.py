"""
Command-line surface for ipk.

Usage:
    ipk kernel --case B --n 1 --p 1/2,1/2 --from 0,0 --to 1,1 --method theorem
    ipk verify --suite inverse --N 2
    ipk rsk --variant rsk --xi grid.csv
    ipk simulate --case A --n 100 --p 1/2,1/2 --seed 7
    ipk info
"""

import argparse
import csv
import logging
import sys
import time
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path

from rich import box
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel

from . import config
from .checks import SUITES, CheckResult, SuiteParams, run_suite
from .exactnum import format_rational, parse_rational
from .exceptions import DomainError, IPKError, WindowError
from .intertwine import q_core_via_conjugation
from .reporting import OutputFormat, RunReport
from .rsk import Correspondence, correspond, coupling_path
from .systems import (
    CaseId,
    InnovationGrid,
    Window,
    certified_n_step_kernel,
    mc_estimate,
    n_step_kernel,
    sample_path,
    theorem_kernel,
)

logger = logging.getLogger(__name__)

console = Console()
err_console = Console(stderr=True)

KERNEL_METHODS = ("theorem", "power", "conjugation", "mc")


# ============================================================================
# ARGUMENT TYPES
# ============================================================================


def rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def rationals(text: str) -> tuple[Fraction, ...]:
    return tuple(rational(part) for part in text.split(","))


def integers(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"Not a comma-separated integer vector: {text!r}") from exc


def read_grid(path: Path) -> tuple[tuple[int, ...], ...]:
    """Rows are particles, columns are times; a non-numeric first row is a header."""
    try:
        with path.open(newline="") as handle:
            rows = [row for row in csv.reader(handle) if row and any(cell.strip() for cell in row)]
    except OSError as exc:
        raise DomainError(f"Cannot read innovation grid {path}: {exc.strerror}") from exc
    if rows and not all(cell.strip().lstrip("-").isdigit() for cell in rows[0]):
        rows = rows[1:]
    try:
        return tuple(tuple(int(cell) for cell in row) for row in rows)
    except ValueError as exc:
        raise DomainError(f"{path} is not an integer innovation grid") from exc


def _params(args: argparse.Namespace, *names: str) -> dict[str, object]:
    params: dict[str, object] = {}
    for name in names:
        value = getattr(args, name)
        if isinstance(value, Fraction):
            value = format_rational(value)
        elif isinstance(value, tuple):
            value = [format_rational(v) if isinstance(v, Fraction) else v for v in value]
        elif isinstance(value, Path):
            value = str(value)
        params[name] = value
    return params


def _probabilities(args: argparse.Namespace, size: int) -> tuple[Fraction, ...]:
    if args.p is None:
        return (Fraction(1, 2),) * size
    if len(args.p) == 1:
        return args.p * size
    return args.p


# ============================================================================
# COMMANDS
# ============================================================================


def cmd_kernel(args: argparse.Namespace) -> RunReport:
    case = CaseId(args.case)
    y, yp = args.y, args.yp
    p = _probabilities(args, len(y))
    report = RunReport(
        command="kernel",
        params=_params(args, "case", "n", "p", "y", "yp", "method", "window", "tol"),
        seed=args.seed if args.method == "mc" else None,
    )
    report.params["p"] = [format_rational(v) for v in p]

    if args.method == "theorem":
        report.value = theorem_kernel(case, y, yp, args.n, p)
        report.tail_bound = Fraction(0)
    elif args.method == "power":
        if args.window is not None:
            kernel = n_step_kernel(case, y, args.n, p, Window(args.window))
            tol = config.IPK_TOLERANCE if args.tol is None else args.tol
            if kernel.tail_bound > tol:
                raise WindowError(
                    f"Window reach {args.window} leaves tail {format_rational(kernel.tail_bound)} above {format_rational(tol)}",
                    tail_bound=kernel.tail_bound,
                )
        else:
            kernel = certified_n_step_kernel(case, y, args.n, p, args.tol)
        report.value = kernel[yp]
        report.tail_bound = kernel.tail_bound
    elif args.method == "conjugation":
        window = Window(args.window) if args.window is not None else None
        result = q_core_via_conjugation(case, y, yp, args.n, p, window, args.tol)
        report.value = result.kernel
        report.tail_bound = result.tail_bound
        report.checks = [
            CheckResult(
                name="core: direct vs Pi P Lambda",
                lhs=result.direct_core,
                rhs=result.conjugated_core,
                passed=abs(result.direct_core - result.conjugated_core) <= result.tail_bound,
            ),
            CheckResult(
                name="prefactor x core = theorem kernel",
                lhs=result.kernel,
                rhs=result.theorem,
                passed=result.kernel == result.theorem,
            ),
        ]
    else:
        estimate = mc_estimate(case, y, yp, args.n, p, args.reps, args.seed, args.threads)
        report.value = estimate.estimate
        report.details = {
            "stderr_bound": format_rational(estimate.stderr_bound),
            "hits": estimate.hits,
            "reps": estimate.reps,
        }
    return report


def cmd_verify(args: argparse.Namespace) -> RunReport:
    p = _probabilities(args, args.N)
    params = SuiteParams(
        size=args.N,
        steps=args.n,
        p=p,
        seed=args.seed,
        tolerance=args.tol if args.tol is not None else config.IPK_TOLERANCE,
        trials=args.trials,
    )
    suite = run_suite(args.suite, params)
    report = RunReport(
        command="verify",
        params=_params(args, "suite", "N", "n", "tol", "trials"),
        checks=list(suite.results),
        seed=args.seed,
    )
    report.params["p"] = [format_rational(v) for v in p]
    return report


def cmd_rsk(args: argparse.Namespace) -> RunReport:
    variant = Correspondence(args.variant)
    grid = InnovationGrid(read_grid(args.xi), variant.law)
    result = correspond(variant, grid)
    edges, direct, coupled = coupling_path(variant, grid)
    return RunReport(
        command="rsk",
        params=_params(args, "variant", "xi"),
        details={
            "P": [list(row) for row in result.P.rows],
            "shapes": [list(shape) for shape in result.shapes],
            "edge": str(variant.edge),
            "edges": [list(e.values) for e in edges],
            "case": str(variant.case),
            "direct": [list(y.values) for y in direct],
            "coupling": coupled,
        },
    )


def cmd_simulate(args: argparse.Namespace) -> RunReport:
    case = CaseId(args.case)
    p = args.p
    y0 = args.y0 if args.y0 is not None else (0,) * len(p)
    path = sample_path(case, y0, args.n, p, args.seed)
    return RunReport(
        command="simulate",
        params=_params(args, "case", "n", "p", "y0"),
        seed=args.seed,
        details={"path": [list(state.values) for state in path]},
    )


def cmd_info(args: argparse.Namespace) -> RunReport:
    info_msg = (
        f"[cyan]Threads:[/cyan] {config.IPK_THREADS}\n"
        f"[cyan]Tolerance:[/cyan] {format_rational(config.IPK_TOLERANCE)}\n"
        f"[cyan]Max reach:[/cyan] {config.IPK_MAX_REACH}\n"
        f"[cyan]Monte Carlo block:[/cyan] {config.IPK_MC_BLOCK}\n"
        f"[cyan]Log level:[/cyan] {config.IPK_LOG_LEVEL}\n"
        f"[cyan]Suites:[/cyan] {', '.join(SUITES)}"
    )
    console.print()
    console.print(Panel(info_msg, title="[bold]ipk Configuration[/bold]", border_style="blue", box=box.SIMPLE))
    console.print()
    return RunReport(command="info")


# ============================================================================
# PARSER
# ============================================================================


def _add_format(parser: argparse.ArgumentParser, default: OutputFormat) -> None:
    parser.add_argument("--format", choices=[f.value for f in OutputFormat], default=default.value)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ipk", description="Exact transition kernels of interacting particle systems")
    commands = parser.add_subparsers(dest="command", required=True)

    kernel = commands.add_parser("kernel", help="Evaluate Q_n(y, y') for one case")
    kernel.add_argument("--case", choices=[c.value for c in CaseId], required=True)
    kernel.add_argument("--n", type=int, required=True)
    kernel.add_argument("--p", type=rationals, required=True, help="jump parameters a/b,c/d,...")
    kernel.add_argument("--from", dest="y", type=integers, required=True)
    kernel.add_argument("--to", dest="yp", type=integers, required=True)
    kernel.add_argument("--method", choices=KERNEL_METHODS, default="theorem")
    kernel.add_argument("--window", type=int, default=None, help="fixed truncation reach")
    kernel.add_argument("--tol", type=rational, default=None)
    kernel.add_argument("--reps", type=int, default=10_000)
    kernel.add_argument("--seed", type=int, default=0)
    kernel.add_argument("--threads", type=int, default=None)
    _add_format(kernel, OutputFormat.JSON)
    kernel.set_defaults(handler=cmd_kernel)

    verify = commands.add_parser("verify", help="Run a verification suite")
    verify.add_argument("--suite", choices=list(SUITES), required=True)
    verify.add_argument("--N", type=int, default=2)
    verify.add_argument("--n", type=int, default=1)
    verify.add_argument("--p", type=rationals, default=None)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--tol", type=rational, default=None)
    verify.add_argument("--trials", type=int, default=3)
    _add_format(verify, OutputFormat.JSON)
    verify.set_defaults(handler=cmd_verify)

    rsk = commands.add_parser("rsk", help="Run an insertion correspondence on an innovation grid")
    rsk.add_argument("--variant", choices=[v.value for v in Correspondence], required=True)
    rsk.add_argument("--xi", type=Path, required=True, help="CSV grid, one row per particle")
    _add_format(rsk, OutputFormat.JSON)
    rsk.set_defaults(handler=cmd_rsk)

    simulate = commands.add_parser("simulate", help="Sample one path of a particle system")
    simulate.add_argument("--case", choices=[c.value for c in CaseId], required=True)
    simulate.add_argument("--n", type=int, required=True)
    simulate.add_argument("--p", type=rationals, required=True)
    simulate.add_argument("--seed", type=int, default=0)
    simulate.add_argument("--y0", type=integers, default=None)
    _add_format(simulate, OutputFormat.CSV)
    simulate.set_defaults(handler=cmd_simulate)

    info = commands.add_parser("info", help="Show the active configuration")
    info.set_defaults(handler=cmd_info, format=None)
    return parser


def setup_logging(level: str = config.IPK_LOG_LEVEL) -> None:
    logging.basicConfig(
        level=level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging()

    try:
        config.validate_config()
    except ValueError as exc:
        err_console.print(f"[red]✗[/red] Invalid configuration: {exc}")
        return 2

    handler: Callable[[argparse.Namespace], RunReport] = args.handler
    started = time.perf_counter()
    try:
        report = handler(args)
    except IPKError as exc:
        err_console.print(f"[red]✗[/red] {type(exc).__name__}: {exc}")
        return exc.exit_code
    report.elapsed = time.perf_counter() - started

    if args.format is not None:
        report.render(args.format, console)
    if not report.passed:
        err_console.print(f"[red]✗[/red] {sum(1 for c in report.checks if not c.passed)} checks failed")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
