"""CLI entry point — click group with one sub-command per pipeline stage."""

from __future__ import annotations

import functools
import logging
import os
import sys
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import IO, Any, TypeVar

import click

from efgkit.core.config import ConfigManager, RunConfig
from efgkit.core.datatypes import Engine, IndexKind, ScoreKind, ValidityMode
from efgkit.core.events import PROGRESS, EventBus
from efgkit.core.exceptions import (
    EfgkitError,
    GraphPropertyError,
    InfeasibleError,
    InputFormatError,
    ValidationError,
    VerificationError,
)

F = TypeVar("F", bound=Callable[..., Any])

_EXIT_CODES: tuple[tuple[type[BaseException], int], ...] = (
    (VerificationError, 4),
    (InfeasibleError, 3),
    (InputFormatError, 2),
    (ValidationError, 2),
    (GraphPropertyError, 2),
    (OSError, 2),
)

_MODE = click.Choice([m.value for m in ValidityMode])
_SCORE = click.Choice([s.value for s in ScoreKind])
_ENGINE = click.Choice([e.value for e in Engine])
_MODE_HELP = "repeat-free with --score maxblocks needs a gapless MSA."
_INDEX = click.Choice([k.value for k in IndexKind])


def _configure_logging() -> None:
    """Send log records to stderr at the level named by ``EFGKIT_LOG`` (default WARNING)."""
    raw = os.environ.get("EFGKIT_LOG", "WARNING").strip()
    level = int(raw) if raw.isdigit() else logging.getLevelNamesMapping().get(raw.upper(), logging.WARNING)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _exit_codes(func: F) -> F:
    """Turn efgkit and OS errors into a message on stderr and the matching exit code."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (EfgkitError, OSError) as exc:
            code = next((c for kind, c in _EXIT_CODES if isinstance(exc, kind)), 1)
            click.echo(f"Error: {exc}", err=True)
            witness = getattr(exc, "witness", None)
            if witness is not None:
                click.echo(f"Witness: {witness!r}", err=True)
            raise SystemExit(code) from exc

    return wrapper  # type: ignore[return-value]


def _event_bus() -> EventBus:
    bus = EventBus()
    bus.subscribe(
        PROGRESS,
        lambda **kw: click.echo(f"  [{kw['current']:5d}/{kw['total']:5d}] {kw['message']}", err=True),
    )
    return bus


def _run_config(ctx: click.Context, tool: str, **values: Any) -> RunConfig:
    config: ConfigManager = ctx.obj
    return RunConfig.from_values(config, tool=tool, **values)


@click.group()
@click.version_option(package_name="efgkit")
@click.option(
    "--config-dir",
    type=click.Path(file_okay=False, path_type=Path),
    default=None,
    help="Directory holding config.toml and tools/*.toml (default: ~/.config/efgkit).",
)
@click.pass_context
def cli(ctx: click.Context, config_dir: Path | None) -> None:
    """efgkit — founder graphs of multiple sequence alignments, their indexes and reductions.

    Set EFGKIT_LOG (e.g. DEBUG) to choose the log level; logs go to stderr.
    """
    _configure_logging()
    config = ConfigManager(config_dir)
    try:
        config.load()
    except InputFormatError as exc:
        click.echo(f"Error: {exc}", err=True)
        raise SystemExit(2) from exc
    ctx.obj = config


# ── segment / build ───────────────────────────────────────────────────────


def _segment(ctx: click.Context, msa_path: Path, **values: Any) -> Any:
    """Load and segment an MSA with the resolved run settings."""
    from efgkit.tools.msa_core import MsaLoaderTool
    from efgkit.tools.segmentation import SegmenterTool

    run = _run_config(ctx, "segmenter", input_path=msa_path, **values)
    bus = _event_bus()
    msa = MsaLoaderTool(event_bus=bus).run(params={"input_path": run.input_path})
    run.check(msa)
    return SegmenterTool(event_bus=bus).run(
        params={
            "mode": run.mode.value,
            "score": run.score.value,
            "engine": run.engine.value,
            "strict": run.strict,
        },
        input_data=msa,
    )


@cli.command(name="segment")
@click.argument("msa", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--mode", type=_MODE, default=None, help=f"Validity mode [default: semi-repeat-free]. {_MODE_HELP}")
@click.option("--score", type=_SCORE, default=None, help="Objective [default: minmaxlength].")
@click.option("--engine", type=_ENGINE, default=None, help="Segmentation engine [default: auto].")
@click.option("--strict", is_flag=True, default=False, help="Exit 3 instead of falling back to a single block.")
@click.option("--out", "out", type=click.Path(dir_okay=False, path_type=Path), help="Write the segmentation JSON.")
@click.pass_context
@_exit_codes
def segment_cmd(
    ctx: click.Context,
    msa: Path,
    mode: str | None,
    score: str | None,
    engine: str | None,
    strict: bool,
    out: Path | None,
) -> None:
    """Find an optimal valid segmentation of an aligned FASTA file."""
    from efgkit.tools.segmentation.logic import block_heights, write_segmentation

    result = _segment(ctx, msa, mode=mode, score=score, engine=engine, strict=strict)
    seg = result.segmentation
    if seg.fallback:
        click.echo(f"No {seg.mode.value} segmentation exists; using the single-block fallback.", err=True)
    if out is not None:
        write_segmentation(seg, out)
    click.echo(f"b={seg.b}")
    click.echo(f"max_length={seg.max_length}")
    click.echo(f"score={seg.score}")
    click.echo(f"fallback={int(seg.fallback)}")
    click.echo("heights=" + ",".join(map(str, block_heights(result.msa, seg))))


@cli.command(name="build")
@click.argument("msa", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option(
    "--segmentation",
    "seg_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Use this segmentation JSON instead of segmenting.",
)
@click.option(
    "--mode",
    type=_MODE,
    default=None,
    help=f"Validity mode when segmenting [default: semi-repeat-free]. {_MODE_HELP}",
)
@click.option("--score", type=_SCORE, default=None, help="Objective when segmenting [default: minmaxlength].")
@click.option("--engine", type=_ENGINE, default=None, help="Segmentation engine [default: auto].")
@click.option("--strict", is_flag=True, default=False, help="Exit 3 instead of falling back to a single block.")
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False, path_type=Path), help="Graph JSON.")
@click.option("--dot", "dot_path", type=click.Path(dir_okay=False, path_type=Path), help="Also write Graphviz DOT.")
@click.option("--gfa", "gfa_path", type=click.Path(dir_okay=False, path_type=Path), help="Also write GFA.")
@click.pass_context
@_exit_codes
def build_cmd(
    ctx: click.Context,
    msa: Path,
    seg_path: Path | None,
    mode: str | None,
    score: str | None,
    engine: str | None,
    strict: bool,
    out: Path,
    dot_path: Path | None,
    gfa_path: Path | None,
) -> None:
    """Build the founder graph of an MSA, segmenting it first unless --segmentation is given."""
    from efgkit.core.datatypes import SegmentationResult
    from efgkit.tools.efg import GraphBuilderTool
    from efgkit.tools.msa_core.logic import read_msa
    from efgkit.tools.segmentation.logic import read_segmentation

    if seg_path is not None:
        result = SegmentationResult(msa=read_msa(msa), segmentation=read_segmentation(seg_path))
    else:
        result = _segment(ctx, msa, mode=mode, score=score, engine=engine, strict=strict)
    g = GraphBuilderTool(event_bus=_event_bus()).run(
        params={"output_path": out, "dot_path": dot_path, "gfa_path": gfa_path},
        input_data=result,
    )
    click.echo(f"Wrote graph with b={g.b}, {len(g.nodes)} nodes, {len(g.edges)} edges to {out}")


# ── index / query / verify ────────────────────────────────────────────────


@cli.command(name="index")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--index", "kind", type=_INDEX, default=None, help="Index kind [default: triple].")
@click.option("--out", "out", required=True, type=click.Path(dir_okay=False, path_type=Path), help="Index file.")
@click.pass_context
@_exit_codes
def index_cmd(ctx: click.Context, graph: Path, kind: str | None, out: Path) -> None:
    """Build a query index over a graph JSON file."""
    from efgkit.tools.efg_index import IndexerTool

    run = _run_config(ctx, "indexer", index_kind=kind)
    index = IndexerTool(event_bus=_event_bus()).run(
        params={"kind": run.index_kind.value, "input_path": graph, "output_path": out},
    )
    click.echo(f"Wrote {index.kind} index to {out}")


def _matcher(target: Path) -> Callable[[str], bool]:
    """Return a pattern test for an index file, or for a graph JSON via online matching."""
    from efgkit.tools.efg.logic import parse_efg
    from efgkit.tools.efg_index._binary import MAGIC
    from efgkit.tools.efg_index.logic import deserialize_index
    from efgkit.tools.hardness.logic import OnlineMatcher

    data = target.read_bytes()
    if data.startswith(MAGIC):
        return deserialize_index(data).occurs
    logging.getLogger(__name__).info("%s is not an index file; matching online", target)
    return OnlineMatcher(parse_efg(data.decode("utf-8"))).occurs


@cli.command(name="query")
@click.argument("target", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.argument("patterns", type=click.File("r"), default="-")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True, help="Threads answering queries.")
@_exit_codes
def query_cmd(target: Path, patterns: IO[str], workers: int) -> None:
    """Print 1 or 0 for each pattern (one per line, blank lines skipped) in input order.

    TARGET is an index file, or a graph JSON answered by online matching.
    PATTERNS defaults to standard input.
    """
    occurs = _matcher(target)
    lines = [line.strip() for line in patterns]
    queries = [line for line in lines if line]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        answers = list(executor.map(occurs, queries))
    for found in answers:
        click.echo("1" if found else "0")


@cli.command(name="verify")
@click.argument("index_path", metavar="INDEX", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--samples", type=click.IntRange(min=1), default=200, show_default=True, help="Patterns of each kind.")
@click.option("--max-length", type=click.IntRange(min=1), default=12, show_default=True, help="Longest pattern.")
@click.option("--seed", type=int, default=None, help="Sampler seed [default: 0].")
@click.pass_context
@_exit_codes
def verify_cmd(ctx: click.Context, index_path: Path, samples: int, max_length: int, seed: int | None) -> None:
    """Re-check an index file: checksum, graph invariants and agreement with online matching."""
    from efgkit.tools.efg_index.logic import load_index, verify_index

    run = _run_config(ctx, "indexer", seed=seed)
    index = load_index(index_path)
    checked = verify_index(index, samples=samples, max_length=max_length, seed=run.seed)
    click.echo(f"OK: {index.kind} index agrees with online matching on {checked} patterns")


# ── wheeler / ovgadget ────────────────────────────────────────────────────


@cli.command(name="wheeler")
@click.argument("graph", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--out", "out", type=click.Path(dir_okay=False, path_type=Path), help="Write JSON (or DOT for .dot).")
@click.option("--no-verify", is_flag=True, default=False, help="Skip the path-label verification.")
@_exit_codes
def wheeler_cmd(graph: Path, out: Path | None, no_verify: bool) -> None:
    """Convert a repeat-free graph JSON into a sorted Wheeler DFA."""
    from efgkit.tools.wheeler import WheelerConverterTool
    from efgkit.tools.wheeler.logic import write_automaton

    aut = WheelerConverterTool(event_bus=_event_bus()).run(params={"input_path": graph, "verify": not no_verify})
    if out is not None:
        write_automaton(aut, out)
    click.echo(f"Wheeler DFA with {len(aut)} states and {len(aut.edges)} edges" + ("" if no_verify else ", verified"))


def _parse_sizes(text: str) -> list[tuple[int, int]]:
    """Parse ``"1x1,2x4"`` into ``[(1, 1), (2, 4)]``."""
    sizes: list[tuple[int, int]] = []
    for item in text.split(","):
        try:
            n, d = (int(v) for v in item.lower().split("x"))
        except ValueError as exc:
            msg = f"Size {item!r} is not of the form NxD"
            raise ValidationError(msg) from exc
        if n < 1 or d < 1:
            msg = f"Size {item!r} must be positive"
            raise ValidationError(msg)
        sizes.append((n, d))
    return sizes


@cli.command(name="ovgadget")
@click.argument("ov_file", required=False, type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--graph-out", type=click.Path(dir_okay=False, path_type=Path), help="Write the gadget graph JSON.")
@click.option("--query-out", type=click.Path(dir_okay=False, path_type=Path), help="Write the query string.")
@click.option("--benchmark", is_flag=True, default=False, help="Time online matching on random reductions.")
@click.option("--sizes", default="1x1,2x2,4x4,8x8,16x16", show_default=True, help="Benchmark sizes as NxD list.")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True, help="Benchmark threads.")
@click.option("--seed", type=int, default=None, help="Benchmark seed [default: 0].")
@click.pass_context
@_exit_codes
def ovgadget_cmd(
    ctx: click.Context,
    ov_file: Path | None,
    graph_out: Path | None,
    query_out: Path | None,
    benchmark: bool,
    sizes: str,
    workers: int,
    seed: int | None,
) -> None:
    """Reduce an Orthogonal Vectors instance to a query and a gadget graph.

    OV_FILE holds 'n d' and then n X and n Y vectors, one per line.
    """
    from efgkit.tools.hardness import OvGadgetTool
    from efgkit.tools.hardness.logic import benchmark_online_match, format_benchmark, online_match

    if ov_file is None and not benchmark:
        msg = "Give an OV_FILE or --benchmark"
        raise click.UsageError(msg)
    if ov_file is not None:
        reduction = OvGadgetTool(event_bus=_event_bus()).run(
            params={"input_path": ov_file, "graph_path": graph_out, "query_path": query_out},
        )
        g = reduction.graph
        click.echo(f"|Q|={len(reduction.query or '')} b={g.b} nodes={len(g.nodes)} edges={len(g.edges)}")
        click.echo(f"match={int(online_match(g, reduction.query or ''))}")
    if benchmark:
        run = _run_config(ctx, "ov_gadget", seed=seed)
        rows = benchmark_online_match(_parse_sizes(sizes), seed=run.seed, workers=workers)
        click.echo(format_benchmark(rows), nl=False)
