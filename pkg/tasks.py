"""Tasks for the ipk project."""

import os
import sys
from pathlib import Path
from invoke import task, Context  # type: ignore
from rich.console import Console
from rich.panel import Panel
from rich.table import Table
from rich import box

console = Console()


IPK_THREADS = os.getenv("IPK_THREADS", str(os.cpu_count() or 1))
IPK_TOLERANCE = os.getenv("IPK_TOLERANCE", "1/1000000000000")
IPK_LOG_LEVEL = os.getenv("IPK_LOG_LEVEL", "WARNING")
MAIN_DIRECTORY_PATH = Path(__file__).parent

# suites run by `invoke verify`, with the sizes used for acceptance
VERIFY_PLAN = [
    ("theorem-vs-oracle", "--N 3 --n 2 --p 1/2,1/3,1/4"),
    ("rowsums", "--N 2 --n 2 --p 1/2,1/3"),
    ("intertwining", "--N 2 --n 2 --p 1/2,1/3"),
    ("inverse", "--N 2 --trials 5"),
    ("bijection", "--N 2 --n 2 --p 1/2,1/3"),
    ("symfun-identities", "--N 3"),
    ("lambda-threeway", "--N 2 --trials 10"),
]


@task(name="list")
def list_tasks(context: Context) -> None:
    """List all available invoke tasks with descriptions."""
    import inspect

    current_module = inspect.getmodule(inspect.currentframe())

    tasks_info = []

    for name, obj in inspect.getmembers(current_module):
        if hasattr(obj, "__wrapped__") or (
            hasattr(obj, "__class__") and "Task" in obj.__class__.__name__
        ):
            display_name = getattr(obj, "name", name)
            if display_name.startswith("_"):
                continue
            if obj.__doc__:
                description = obj.__doc__.strip().split("\n")[0]
            else:
                description = "No description available"
            tasks_info.append((display_name, description))

    tasks_info.sort(key=lambda x: x[0])

    table = Table(
        title="Available Invoke Tasks",
        box=box.SIMPLE,
        show_header=True,
        header_style="bold cyan",
    )
    table.add_column("Task", style="green", no_wrap=True)
    table.add_column("Description", style="white")

    for name, desc in tasks_info:
        table.add_row(name, desc)

    console.print()
    console.print(table)
    console.print()


@task
def info(context: Context) -> None:
    """Show current ipk configuration."""
    info_msg = (
        f"[cyan]Threads:[/cyan] {IPK_THREADS}\n"
        f"[cyan]Tolerance:[/cyan] {IPK_TOLERANCE}\n"
        f"[cyan]Log level:[/cyan] {IPK_LOG_LEVEL}\n"
        f"[cyan]Suites:[/cyan] {', '.join(name for name, _ in VERIFY_PLAN)}"
    )

    info_panel = Panel(
        info_msg,
        title="[bold]ipk Configuration[/bold]",
        border_style="blue",
        box=box.SIMPLE,
    )
    console.print()
    console.print(info_panel)
    console.print()


@task(name="run-tests", optional=["slow"])
def run_tests(context: Context, slow: bool = False) -> None:
    """Run all tests (use --slow for acceptance-scale runs)."""
    console.print()
    console.print(
        Panel(
            "[bold cyan]Running Tests[/bold cyan]", border_style="cyan", box=box.SIMPLE
        )
    )
    flag = " --runslow" if slow else ""
    context.run(f"pytest -vv tests{flag}")
    console.print("[green]✓[/green] Tests completed")


@task(optional=["suite"])
def verify(context: Context, suite: str = "") -> None:
    """Run the verification suites at acceptance sizes (use --suite to pick one)."""
    plan = [(name, flags) for name, flags in VERIFY_PLAN if not suite or name == suite]
    if not plan:
        console.print(f"[red]✗[/red] Unknown suite [bold]{suite}[/bold]")
        sys.exit(2)

    console.print()
    console.print(
        Panel(
            "[bold cyan]Running Verification Suites[/bold cyan]\n"
            f"[dim]Suites:[/dim] {len(plan)}",
            border_style="cyan",
            box=box.SIMPLE,
        )
    )

    table = Table(title="Verification", box=box.SIMPLE, show_header=True, header_style="bold magenta")
    table.add_column("Suite", style="cyan", no_wrap=True)
    table.add_column("Flags", style="dim")
    table.add_column("Result", no_wrap=True)

    failed = 0
    for name, flags in plan:
        console.print(f"\n[yellow]→[/yellow] Running {name}...")
        result = context.run(f"ipk verify --suite {name} {flags} --format csv", warn=True, hide="out")
        ok = result is not None and result.exited == 0
        failed += 0 if ok else 1
        table.add_row(name, flags, "[green]pass[/green]" if ok else "[red]FAIL[/red]")

    console.print()
    console.print(table)
    console.print()
    if failed:
        console.print(f"[red]✗[/red] {failed} suite(s) failed")
        sys.exit(1)
    console.print("[green]✓[/green] All suites passed")


@task(name="_lint-mypy")
def lint_mypy(context: Context) -> None:
    """Run mypy to check all Python files."""
    print(" - Check code with mypy")
    exec_cmd = "mypy --show-error-codes ."
    with context.cd(MAIN_DIRECTORY_PATH):
        context.run(exec_cmd)


@task(name="_lint-ruff")
def lint_ruff(context: Context) -> None:
    """Run ruff to check all Python files."""
    print(" - Check code with ruff")
    exec_cmd = "ruff check ."
    with context.cd(MAIN_DIRECTORY_PATH):
        context.run(exec_cmd)


@task(name="lint")
def lint_all(context: Context) -> None:
    """Run all linters."""
    console.print()
    console.print(
        Panel(
            "[bold yellow]Running All Linters[/bold yellow]\n"
            "[dim]Ruff → Mypy[/dim]",
            border_style="yellow",
            box=box.SIMPLE,
        )
    )

    console.print("\n[yellow]→[/yellow] Running ruff...")
    lint_ruff(context)

    console.print("\n[yellow]→[/yellow] Running mypy...")
    lint_mypy(context)

    console.print("\n[green]✓[/green] All linters completed!")
    console.print()
