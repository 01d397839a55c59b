"""Command-line front end: gen | reconstruct | approx | bench | fit."""

import json
import logging
import os
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler

from .bench import BenchRunner, fit_csv, parse_f_rule, write_csv
from .errors import ArgumentError, ReconstructionError
from .generators import generate, validate
from .graph_core import dump_graph, load_graph, save_graph
from .graph_types import GenSpec, GraphKind
from .recon_manager import ReconstructionManager
from .recon_types import BenchConfig, ReconAlgorithm

app = typer.Typer(help="Reconstruct hidden graphs from a distance oracle.", no_args_is_help=True)
err_console = Console(stderr=True)

logger = logging.getLogger(__name__)

EXIT_INCORRECT = 3

_ALGO_OPTIONS = {
    ReconAlgorithm.BOUNDED: ("s", "K"),
    ReconAlgorithm.OUTERPLANAR: ("beta", "C"),
}


@contextmanager
def _exit_on_error():
    """Map library errors to a red stderr line and the documented exit code."""
    try:
        yield
    except ReconstructionError as e:
        err_console.print(f"[red]error:[/red] {e}")
        seed = getattr(e, "seed", None)
        if seed is not None:
            err_console.print(f"offending seed: {seed}")
        raise typer.Exit(code=e.exit_code)
    except ValidationError as e:
        err_console.print(f"[red]invalid configuration:[/red] {e}")
        raise typer.Exit(code=2)


def _parse_perms(raw: List[str]) -> List[List[int]]:
    try:
        return [[int(tok) for tok in p.split(",")] for p in raw]
    except ValueError:
        raise ArgumentError(f"--perm takes comma-separated integers, got {raw}")


def _emit(payload: str, out: Optional[Path]) -> None:
    if out is None:
        typer.echo(payload)
    else:
        out.write_text(payload + "\n")
        err_console.print(f"wrote {out}")


@app.callback()
def main(
    log_level: Optional[str] = typer.Option(
        None, "--log-level", help="Logging level (default: RECON_LOG_LEVEL or WARNING)."
    ),
):
    level = (log_level or os.getenv("RECON_LOG_LEVEL", "WARNING")).upper()
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=err_console, show_path=False)],
        force=True,
    )


@app.command()
def gen(
    kind: GraphKind = typer.Option(..., "--type", help="Instance family."),
    n: Optional[int] = typer.Option(None, "--n", help="Vertex count."),
    delta: int = typer.Option(4, "--delta", help="Maximum degree."),
    seed: Optional[int] = typer.Option(None, "--seed", help="Generator seed."),
    f: Optional[int] = typer.Option(None, "--f", help="Lower-bound factor f."),
    k: Optional[int] = typer.Option(None, "--k", help="Lower-bound branch width k."),
    perm: Optional[List[str]] = typer.Option(
        None, "--perm", help="Lower-bound permutation as comma-separated 1..k; repeat f times."
    ),
    extra_edges: float = typer.Option(0.5, "--extra-edges", help="Extra edges per vertex (bounded)."),
    out: Optional[Path] = typer.Option(None, "--out", help="Output file (default: stdout)."),
):
    """Generate an instance in the graph text format."""
    with _exit_on_error():
        if seed is None:
            seed = ReconstructionManager().master_seed
        perms = _parse_perms(perm) if perm else None
        spec = GenSpec(
            kind=kind, n=n, delta=delta, seed=seed, f=f, k=k,
            perms=perms, extra_edge_ratio=extra_edges,
        )
        graph = generate(spec)
        report = validate(graph)
        header = json.dumps(spec.describe(), sort_keys=True)
        if out is None:
            sys.stdout.write(dump_graph(graph, header))
        else:
            save_graph(graph, out, header)
        err_console.print(f"n={report.n} m={report.m} max_degree={report.max_degree}")


@app.command()
def reconstruct(
    graph_path: Path = typer.Argument(..., help="Graph text file."),
    algo: ReconAlgorithm = typer.Option(ReconAlgorithm.BOUNDED, "--algo"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    s: Optional[int] = typer.Option(None, "--s", help="Center sampling rate (bounded)."),
    K: Optional[float] = typer.Option(None, "--K", help="Sampling constant K (bounded)."),
    beta: Optional[float] = typer.Option(None, "--beta", help="Balance bound (outerplanar)."),
    C: Optional[float] = typer.Option(None, "--C", help="Path sampling constant (outerplanar)."),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here."),
):
    """Reconstruct a graph exactly and report query counts."""
    with _exit_on_error():
        given = {"s": s, "K": K, "beta": beta, "C": C}
        applicable = _ALGO_OPTIONS.get(algo, ())
        stray = sorted(name for name, value in given.items() if value is not None and name not in applicable)
        if stray:
            raise ArgumentError(
                f"--algo {algo.value} does not take " + ", ".join(f"--{name}" for name in stray)
            )
        graph = load_graph(graph_path)
        overrides = {name: given[name] for name in applicable}
        report = ReconstructionManager().reconstruct(graph, algo, seed, overrides)
        _emit(report.model_dump_json(indent=2), out)
    if not report.correct:
        err_console.print(
            f"[red]incorrect reconstruction:[/red] {report.missing_edges} missing, "
            f"{report.extra_edges} extra (seed {report.seed})"
        )
        raise typer.Exit(code=EXIT_INCORRECT)


@app.command()
def approx(
    graph_path: Path = typer.Argument(..., help="Graph text file."),
    f: str = typer.Option(..., "--f", help="Factor f: a number or const:<k>, sqrt, n/<k>."),
    seed: Optional[int] = typer.Option(None, "--seed"),
    out: Optional[Path] = typer.Option(None, "--out", help="Write the JSON report here."),
):
    """Build an f-approximate metric and verify it."""
    with _exit_on_error():
        graph = load_graph(graph_path)
        report = ReconstructionManager().approximate(graph, parse_f_rule(f, graph.n), seed)
        _emit(report.model_dump_json(indent=2), out)
    if not report.ok:
        raise typer.Exit(code=EXIT_INCORRECT)


@app.command()
def bench(
    config_path: Path = typer.Argument(..., help="Benchmark config JSON."),
    out: Optional[Path] = typer.Option(None, "--out", help="CSV path (overrides out_csv)."),
    workers: Optional[int] = typer.Option(None, "--workers", min=1),
):
    """Run a benchmark sweep and write one CSV row per (n, rep)."""
    with _exit_on_error():
        try:
            raw = config_path.read_text()
        except OSError as e:
            raise ReconstructionError(f"cannot read {config_path}: {e}")
        config = BenchConfig.model_validate_json(raw)
        if workers is None:
            env_workers = ReconstructionManager().workers
            workers = env_workers if env_workers > 1 else config.workers
        records = BenchRunner(config, workers).run_sync()
        target = out or (Path(config.out_csv) if config.out_csv else None)
        if target is None:
            write_csv(records, sys.stdout)
        else:
            write_csv(records, target)
            err_console.print(f"wrote {len(records)} rows to {target}")


@app.command()
def fit(
    csv_path: Path = typer.Argument(..., help="Benchmark CSV."),
    algo: Optional[ReconAlgorithm] = typer.Option(None, "--algo", help="Only rows of this algorithm."),
):
    """Fit log2(median distinct queries) against log2(n)."""
    with _exit_on_error():
        result = fit_csv(csv_path, algo)
        typer.echo(result.model_dump_json(indent=2))


if __name__ == "__main__":
    app()
