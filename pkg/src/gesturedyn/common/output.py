"""CLI output with rich formatting.

Color-coded messages, statistics tables and progress bars shared by all
subcommands. Nothing here is ever written into data files.
"""

from contextlib import contextmanager
from typing import List, Optional, Tuple

from rich.console import Console
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
)
from rich.table import Table

# Global console instance
console = Console()


def success(message: str):
    """Print success message in green."""
    console.print(f"✅ {message}", style="bold green")


def warning(message: str):
    """Print warning message in yellow."""
    console.print(f"⚠️  {message}", style="bold yellow")


def print_stats(stats: List[Tuple[str, str]]):
    """Print statistics in a formatted table."""
    table = Table.grid(padding=(0, 2))
    table.add_column(style="cyan", no_wrap=True)
    table.add_column(style="white")

    for label, value in stats:
        table.add_row(f"{label}:", value)

    console.print(table)


@contextmanager
def sweep_progress():
    """Progress bar for sweeps and figure reproduction.

    Yields:
        rich Progress object; add a task and advance it per finished point

    Example:
        with sweep_progress() as progress:
            task = progress.add_task("Sweeping k...", total=len(ks))
            run_sweep(..., on_record=lambda _: progress.advance(task))
    """
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TaskProgressColumn(),
        TimeElapsedColumn(),
        console=console,
        transient=True,
    ) as progress:
        yield progress


def print_summary(
    title: str,
    stats: List[Tuple[str, str]],
    files: Optional[List[Tuple[str, str]]] = None,
):
    """Print completion summary with statistics and the files written.

    Args:
        title: Summary title
        stats: List of (label, value) tuples
        files: Optional list of (path, description) tuples
    """
    console.print()
    success(title)

    if stats:
        console.print("\n   📊 Results:")
        for label, value in stats:
            console.print(f"      • {label}: [bold]{value}[/bold]")

    if files:
        console.print("\n   📝 Output files:")
        for file_path, description in files:
            console.print(f"      • {format_path(file_path)} - {description}")

    console.print()


def format_path(path: str) -> str:
    """Format file path for display with magenta color."""
    return f"[magenta]{path}[/magenta]"


def format_number(value: Optional[float], digits: int = 6) -> str:
    """Format a scalar for terminal display; None renders as a dash."""
    if value is None:
        return "-"
    return f"{value:.{digits}g}"
