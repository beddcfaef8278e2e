"""Optimal segmentations: maximum block count and minimum maximum segment length."""

from __future__ import annotations

import itertools
import json
import logging
from pathlib import Path
from typing import Any

from efgkit.core.datatypes import (
    GAP,
    DpTrace,
    Engine,
    Msa,
    ScoreKind,
    Segmentation,
    SegmentationResult,
    ValidityMode,
    ValidityTable,
    score_intervals,
)
from efgkit.core.events import EventBus
from efgkit.core.exceptions import InfeasibleError, InputFormatError, ValidationError
from efgkit.stringds import SaInterval, build_gsa
from efgkit.tools.msa_core.logic import spell
from efgkit.tools.segmentation._range_min import MinSegmentTree, SemiDynamicRmq
from efgkit.tools.validity.logic import compute_f_elastic, compute_v_f_gapless, is_valid_segment

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1


def _progress(event_bus: EventBus | None, current: int, total: int, message: str) -> None:
    if event_bus is not None:
        event_bus.progress("segmenter", current, total, message)


# ── Maximum number of blocks ──────────────────────────────────────────────


def maxblocks(table: ValidityTable, *, event_bus: EventBus | None = None) -> DpTrace:
    """Maximise the number of blocks over segmentations valid under *table*.

    Pairs ``(j, f(j))`` are bucket-sorted by f(j); sweeping the end column j
    activates every start j' with ``f(j') <= j`` and keeps the best activated
    score. Ties go to the largest j'.

    Args:
        table: f table of the chosen validity mode.
        event_bus: Receives one progress event per column.

    Returns:
        The trace; ``scores[j]`` is ``None`` when [1..j] has no valid segmentation.
    """
    n = table.n
    buckets: list[list[int]] = [[] for _ in range(n + 1)]
    for j, fj in enumerate(table.f):
        if fj is not None:
            buckets[fj].append(j)

    scores: list[int | None] = [None] * (n + 1)
    predecessors: list[int | None] = [None] * (n + 1)
    scores[0] = 0
    best: tuple[int, int] | None = None
    for j in range(1, n + 1):
        for start in buckets[j]:
            value = scores[start]
            if value is not None and (best is None or (value, start) > best):
                best = (value, start)
        if best is not None:
            scores[j] = best[0] + 1
            predecessors[j] = best[1]
        _progress(event_bus, j, n, f"maxblocks({j})")
    return DpTrace(kind="maxblocks", scores=tuple(scores), predecessors=tuple(predecessors))


# ── Minimum maximum segment length ────────────────────────────────────────


def minmaxlength_fj(table: ValidityTable, *, event_bus: EventBus | None = None) -> DpTrace:
    """Minimise the longest segment over segmentations valid under *table*.

    Two search trees over keys ``0..2n`` hold the activated starts j' keyed by
    ``j' + minmaxlength(j')``: keys ``>= j`` contribute ``minmaxlength(j')``,
    keys ``< j`` contribute ``j - j'``.

    Args:
        table: f table of the chosen validity mode.
        event_bus: Receives one progress event per column.

    Returns:
        The trace; ties go to the largest j'.
    """
    n = table.n
    buckets: list[list[int]] = [[] for _ in range(n + 1)]
    for j, fj in enumerate(table.f):
        if fj is not None:
            buckets[fj].append(j)

    carried: MinSegmentTree[tuple[int, int]] = MinSegmentTree(2 * n + 1)
    distance: MinSegmentTree[int] = MinSegmentTree(2 * n + 1)
    scores: list[int | None] = [None] * (n + 1)
    predecessors: list[int | None] = [None] * (n + 1)
    scores[0] = 0
    for j in range(1, n + 1):
        for start in buckets[j]:
            value = scores[start]
            if value is not None:
                carried.upgrade(start + value, (value, -start))
                distance.upgrade(start + value, -start)
        candidates: list[tuple[int, int]] = []
        kept = carried.range_min(j, 2 * n)
        if kept is not None:
            candidates.append(kept)
        far = distance.range_min(0, j - 1)
        if far is not None:
            candidates.append((j + far, far))
        if candidates:
            score, neg_start = min(candidates)
            scores[j] = score
            predecessors[j] = -neg_start
        _progress(event_bus, j, n, f"minmaxlength({j})")
    return DpTrace(kind="minmaxlength", scores=tuple(scores), predecessors=tuple(predecessors))


def minmaxlength_linear_gapless(
    table: ValidityTable,
    *,
    threshold: int | None = None,
    event_bus: EventBus | None = None,
) -> DpTrace:
    """Minimise the longest segment in linear time from a gapless repeat-free v table.

    ``s(j) = min over j' <= v(j) of max(j - j', s(j'))`` with infeasible entries held
    at the threshold K. The maximal argmin x(j) never moves left, and a candidate
    j* is it iff ``max(j - j*, s(j*))`` is below every s over ``(j*, v(j)]``.

    Args:
        table: Table with v values (from ``compute_v_f_gapless``).
        threshold: Initial threshold K; defaults to ``n + 1``.
        event_bus: Receives one progress event per column.

    Returns:
        The trace with ``x`` and ``threshold`` recorded.

    Raises:
        ValidationError: If the table has no v values.
    """
    if table.v is None:
        msg = "The linear recurrence needs v values (compute_v_f_gapless)"
        raise ValidationError(msg)
    n = table.n
    k = n + 1 if threshold is None else threshold
    s = SemiDynamicRmq()
    s.append(0)
    values = [0]
    x: list[int | None] = [None] * (n + 1)
    predecessors: list[int | None] = [None] * (n + 1)
    cursor = 0
    for j in range(1, n + 1):
        vj = table.v[j]
        if vj is None:
            values.append(k)
            s.append(k)
            continue
        assert cursor <= vj, "x(j) moved left"
        while True:
            later = s.range_min(cursor + 1, vj)
            if later is None or max(j - cursor, values[cursor]) < later:
                break
            cursor += 1
        score = max(j - cursor, values[cursor])
        assert score <= max(j, k)
        values.append(score)
        s.append(score)
        x[j] = cursor
        predecessors[j] = cursor
        _progress(event_bus, j, n, f"s({j})")
    scores = tuple(None if value >= k and j > 0 else value for j, value in enumerate(values))
    return DpTrace(
        kind="linear",
        scores=scores,
        predecessors=tuple(predecessors),
        x=tuple(x),
        threshold=k,
    )


def _nested_or_overlapping(entries: list[tuple[SaInterval, int]]) -> bool:
    """Return whether two distinct (locus, length) entries have nested or equal loci."""
    ordered = sorted(entries, key=lambda e: (e[0].lo, -e[0].hi))
    return any(nxt[0].lo < prev[0].hi for prev, nxt in itertools.pairwise(ordered))


def elastic_repeat_free_minmax(msa: Msa, *, event_bus: EventBus | None = None) -> DpTrace:
    """Minimise the longest segment over repeat-free segmentations of any alignment.

    For each end column j the start j' walks leftwards; every row left-extends
    its suffix-array range by its symbol at column j'+1 (ranges are kept on gaps).
    ``[j'+1..j]`` is repeat-free iff all rows spell non-empty strings, the
    distinct row strings have pairwise non-nested ranges, and the ranges cover
    exactly m suffixes. The walk stops once ``j - j'`` exceeds the best score.

    Args:
        msa: The alignment; gaps allowed.
        event_bus: Receives one progress event per column.

    Returns:
        The trace; ``scores[j]`` is ``None`` when e(j) stays at its initial ``j + 1``.
    """
    n, m = msa.n, msa.m
    limit = n + 1
    e = [0] + [j + 1 for j in range(1, n + 1)]
    predecessors: list[int | None] = [None] * (n + 1)
    spelled = msa.spelled_rows()
    if any(not row for row in spelled):
        return DpTrace(kind="elastic", scores=(0,) + (None,) * n, predecessors=tuple(predecessors), threshold=limit)

    gss = build_gsa(spelled, msa.alphabet)
    for j in range(1, n + 1):
        loci = [gss.full_interval() for _ in range(m)]
        lengths = [0] * m
        for start in range(j - 1, -1, -1):
            if j - start > e[j]:
                break
            for i, row in enumerate(msa.rows):
                if row[start] != GAP:
                    loci[i] = gss.backward_step(loci[i], row[start])
                    lengths[i] += 1
            if e[start] >= start + 1 or any(length == 0 for length in lengths):
                continue
            distinct = list(set(zip(loci, lengths, strict=True)))
            if _nested_or_overlapping(distinct) or sum(locus.size for locus, _ in distinct) != m:
                continue
            score = max(j - start, e[start])
            if score < e[j]:
                e[j] = score
                predecessors[j] = start
        assert e[j] <= max(j, limit)
        _progress(event_bus, j, n, f"e({j})")
    scores = tuple(value if j == 0 or value < j + 1 else None for j, value in enumerate(e))
    return DpTrace(kind="elastic", scores=scores, predecessors=tuple(predecessors), threshold=limit)


# ── Exhaustive oracle ─────────────────────────────────────────────────────


def exhaustive_segmentation(msa: Msa, mode: ValidityMode, kind: ScoreKind) -> Segmentation | None:
    """Search all 2^(n-1) partitions for the optimum; ``None`` if none is valid."""
    n = msa.n
    valid = {(x, y): is_valid_segment(msa, x, y, mode) for x in range(1, n + 1) for y in range(x, n + 1)}
    best: tuple[tuple[int, int], ...] | None = None
    best_score = 0
    for cuts in itertools.product((False, True), repeat=n - 1):
        intervals: list[tuple[int, int]] = []
        start = 1
        for col, cut in enumerate(cuts, start=1):
            if cut:
                intervals.append((start, col))
                start = col + 1
        intervals.append((start, n))
        if not all(valid[interval] for interval in intervals):
            continue
        score = score_intervals(intervals, kind)
        better = score > best_score if kind is ScoreKind.MAXBLOCKS else score < best_score
        if best is None or better:
            best, best_score = tuple(intervals), score
    if best is None:
        return None
    return Segmentation(intervals=best, mode=mode, score_kind=kind, score=best_score)


# ── Driver ────────────────────────────────────────────────────────────────


def resolve_engine(msa: Msa, mode: ValidityMode, engine: Engine) -> Engine:
    """Resolve ``auto``: gapless repeat-free input takes the linear engine, everything else the elastic one."""
    if engine is not Engine.AUTO:
        return engine
    if msa.is_gapless and mode is ValidityMode.REPEAT_FREE:
        return Engine.GAPLESS_LINEAR
    return Engine.ELASTIC


def _run_recurrence(
    msa: Msa,
    mode: ValidityMode,
    kind: ScoreKind,
    engine: Engine,
    event_bus: EventBus | None,
) -> tuple[DpTrace, ValidityTable | None]:
    if engine is Engine.GAPLESS_LINEAR:
        if not msa.is_gapless:
            msg = "Engine 'gapless-linear' requires a gapless MSA; use --engine elastic"
            raise ValidationError(msg)
        table = compute_v_f_gapless(msa, event_bus=event_bus)
        if kind is ScoreKind.MAXBLOCKS:
            return maxblocks(table, event_bus=event_bus), table
        return minmaxlength_linear_gapless(table, event_bus=event_bus), table

    if mode is ValidityMode.REPEAT_FREE and kind is ScoreKind.MINMAXLENGTH:
        return elastic_repeat_free_minmax(msa, event_bus=event_bus), None
    if mode is ValidityMode.REPEAT_FREE and not msa.is_gapless:
        msg = "Repeat-free maxblocks needs a gapless MSA; use --score minmaxlength or --mode semi-repeat-free"
        raise ValidationError(msg)
    # Gapless blocks hold equal-length strings, so both modes share one f table there.
    table = compute_f_elastic(msa, event_bus=event_bus)
    if kind is ScoreKind.MAXBLOCKS:
        return maxblocks(table, event_bus=event_bus), table
    return minmaxlength_fj(table, event_bus=event_bus), table


def segment(
    msa: Msa,
    *,
    mode: ValidityMode = ValidityMode.SEMI_REPEAT_FREE,
    score: ScoreKind = ScoreKind.MINMAXLENGTH,
    engine: Engine = Engine.AUTO,
    strict: bool = False,
    event_bus: EventBus | None = None,
) -> SegmentationResult:
    """Find an optimal valid segmentation of *msa*.

    Args:
        msa: The alignment.
        mode: Validity mode every segment must satisfy.
        score: Objective.
        engine: Which recurrence family to run (``auto`` picks by gaps and mode).
        strict: Raise instead of falling back to a single block.
        event_bus: Receives progress events.

    Returns:
        Segmentation plus the DP trace and validity table used.

    Raises:
        ValidationError: For an engine/mode/score combination the input cannot use, such as
            repeat-free maxblocks or the gapless-linear engine on a gapped MSA.
        InfeasibleError: If no valid segmentation exists and *strict* is set.
    """
    chosen = resolve_engine(msa, mode, engine)
    logger.info("Segmenting %d×%d MSA: mode=%s score=%s engine=%s", msa.m, msa.n, mode, score, chosen)
    trace, table = _run_recurrence(msa, mode, score, chosen, event_bus)
    intervals = trace.intervals()
    if intervals is None:
        if strict:
            msg = f"No {mode.value} segmentation exists for this MSA"
            raise InfeasibleError(msg)
        logger.warning("No %s segmentation exists; falling back to a single block", mode.value)
        fallback = ((1, msa.n),)
        segmentation = Segmentation(
            intervals=fallback,
            mode=mode,
            score_kind=score,
            score=score_intervals(fallback, score),
            fallback=True,
        )
    else:
        final = trace.final_score
        assert final is not None
        segmentation = Segmentation(intervals=intervals, mode=mode, score_kind=score, score=final)
    if event_bus is not None:
        event_bus.completed("segmenter", f"Segmented into {segmentation.b} blocks")
    return SegmentationResult(msa=msa, segmentation=segmentation, trace=trace, table=table)


def block_heights(msa: Msa, segmentation: Segmentation) -> tuple[int, ...]:
    """Return the number of distinct spelled row strings per segment."""
    return tuple(len({spell(row[x - 1 : y]) for row in msa.rows}) for x, y in segmentation.intervals)


# ── Serialisation ─────────────────────────────────────────────────────────


def serialize_segmentation(segmentation: Segmentation) -> str:
    """Serialise a segmentation as deterministic JSON."""
    doc = {
        "version": FORMAT_VERSION,
        "mode": segmentation.mode.value,
        "score_kind": segmentation.score_kind.value,
        "score": segmentation.score,
        "fallback": segmentation.fallback,
        "intervals": [list(interval) for interval in segmentation.intervals],
    }
    return json.dumps(doc, indent=2) + "\n"


def parse_segmentation(text: str) -> Segmentation:
    """Parse a document written by ``serialize_segmentation``.

    Raises:
        InputFormatError: On malformed JSON or an inconsistent segmentation.
    """
    try:
        doc: Any = json.loads(text)
    except json.JSONDecodeError as exc:
        msg = f"Invalid segmentation JSON: {exc.msg}"
        raise InputFormatError(msg, line=exc.lineno) from exc
    if not isinstance(doc, dict) or doc.get("version") != FORMAT_VERSION:
        msg = "Not a segmentation document of a supported version"
        raise InputFormatError(msg)
    try:
        return Segmentation(
            intervals=tuple((int(x), int(y)) for x, y in doc["intervals"]),
            mode=ValidityMode(doc["mode"]),
            score_kind=ScoreKind(doc["score_kind"]),
            score=int(doc["score"]),
            fallback=bool(doc.get("fallback", False)),
        )
    except (KeyError, TypeError, ValueError, ValidationError) as exc:
        msg = f"Malformed segmentation document: {exc}"
        raise InputFormatError(msg) from exc


def write_segmentation(segmentation: Segmentation, path: Path) -> Path:
    """Write a segmentation document and return the path."""
    path.write_text(serialize_segmentation(segmentation), encoding="utf-8")
    return path


def read_segmentation(path: Path) -> Segmentation:
    """Read a segmentation document."""
    return parse_segmentation(path.read_text(encoding="utf-8"))
