"""Tests for the segmentation recurrences, the driver and the JSON document."""

from __future__ import annotations

import logging
import random

import pytest

from efgkit.core.datatypes import Engine, Msa, ScoreKind, Segmentation, ValidityMode, score_intervals
from efgkit.core.exceptions import InfeasibleError, InputFormatError, ValidationError
from efgkit.tools.msa_core.logic import random_msa
from efgkit.tools.segmentation._range_min import MinSegmentTree, SemiDynamicRmq
from efgkit.tools.segmentation.logic import (
    block_heights,
    elastic_repeat_free_minmax,
    exhaustive_segmentation,
    maxblocks,
    minmaxlength_fj,
    minmaxlength_linear_gapless,
    parse_segmentation,
    read_segmentation,
    resolve_engine,
    segment,
    serialize_segmentation,
    write_segmentation,
)
from efgkit.tools.validity.logic import compute_f_elastic, compute_v_f_gapless, is_valid_segment

RF = ValidityMode.REPEAT_FREE
SRF = ValidityMode.SEMI_REPEAT_FREE
MAXB = ScoreKind.MAXBLOCKS
MINMAX = ScoreKind.MINMAXLENGTH


# ── TestRangeMin ───────────────────────────────────────────────────────────


class TestRangeMin:
    """Tests for the range-minimum helpers."""

    def test_segment_tree_against_scan(self) -> None:
        """Random upgrades and queries agree with a plain list."""
        rng = random.Random(1)
        tree: MinSegmentTree[int] = MinSegmentTree(13)
        plain: list[int | None] = [None] * 13
        for _ in range(300):
            key, value = rng.randrange(13), rng.randint(-50, 50)
            tree.upgrade(key, value)
            plain[key] = value if plain[key] is None else min(plain[key], value)  # type: ignore[type-var]
            lo, hi = sorted((rng.randrange(-2, 15), rng.randrange(-2, 15)))
            window = [v for v in plain[max(lo, 0) : max(hi + 1, 0)] if v is not None]
            assert tree.range_min(lo, hi) == (min(window) if window else None)

    def test_segment_tree_key_bounds(self) -> None:
        """Keys outside the tree are rejected."""
        with pytest.raises(IndexError):
            MinSegmentTree[int](4).upgrade(4, 0)

    def test_sparse_table_against_scan(self) -> None:
        """Appending and querying agree with ``min`` over a slice."""
        rng = random.Random(2)
        rmq = SemiDynamicRmq()
        values: list[int] = []
        for _ in range(70):
            value = rng.randint(0, 30)
            rmq.append(value)
            values.append(value)
            lo = rng.randrange(len(values))
            hi = rng.randrange(lo, len(values))
            assert rmq.range_min(lo, hi) == min(values[lo : hi + 1])
        assert rmq.range_min(5, 4) is None
        with pytest.raises(IndexError):
            rmq.range_min(0, len(values))


# ── TestRecurrences ────────────────────────────────────────────────────────


class TestRecurrences:
    """Tests for the individual recurrences on the small alignments."""

    def test_maxblocks_msa_a(self, msa_a: Msa) -> None:
        """ACGT / ATGT splits into [1..2][3..4]."""
        trace = maxblocks(compute_v_f_gapless(msa_a))
        assert trace.final_score == 2
        assert trace.intervals() == ((1, 2), (3, 4))

    def test_minmaxlength_fj_msa_a(self, msa_a: Msa) -> None:
        """The longest segment has length 2."""
        trace = minmaxlength_fj(compute_v_f_gapless(msa_a))
        assert trace.scores == (0, 1, 2, 2, 2)
        assert trace.intervals() == ((1, 2), (3, 4))

    def test_linear_msa_a(self, msa_a: Msa) -> None:
        """Scores, argmins and the default threshold."""
        trace = minmaxlength_linear_gapless(compute_v_f_gapless(msa_a))
        assert trace.scores == (0, 1, 2, 2, 2)
        assert trace.x == (None, 0, 0, 2, 2)
        assert trace.threshold == 5

    def test_linear_needs_v(self, msa_b: Msa) -> None:
        """An f-only table is rejected."""
        with pytest.raises(ValidationError):
            minmaxlength_linear_gapless(compute_f_elastic(msa_b))

    def test_undefined_start_blocks_everything(self, msa_b: Msa) -> None:
        """f(0) undefined leaves every prefix infeasible."""
        table = compute_f_elastic(msa_b)
        assert maxblocks(table).intervals() is None
        assert minmaxlength_fj(table).final_score is None

    def test_elastic_repeat_free_infeasible(self, msa_b: Msa) -> None:
        """MSA-B has no repeat-free segmentation."""
        assert elastic_repeat_free_minmax(msa_b).final_score is None
        assert exhaustive_segmentation(msa_b, RF, MINMAX) is None

    def test_linear_equals_fj(self) -> None:
        """Both minmaxlength recurrences give identical score tables on gapless input."""
        rng = random.Random(3)
        for _ in range(120):
            msa = random_msa(rng, rng.randint(1, 4), rng.randint(1, 12), alphabet="AC")
            table = compute_v_f_gapless(msa)
            assert minmaxlength_linear_gapless(table).scores == minmaxlength_fj(table).scores, msa.rows

    def test_linear_x_monotone(self) -> None:
        """Recorded argmins never move left."""
        rng = random.Random(4)
        for _ in range(60):
            msa = random_msa(rng, rng.randint(1, 4), rng.randint(1, 12), alphabet="AC")
            xs = [x for x in minmaxlength_linear_gapless(compute_v_f_gapless(msa)).x or () if x is not None]
            assert xs == sorted(xs)

    def test_elastic_equals_linear_on_gapless(self) -> None:
        """The elastic repeat-free walk agrees with the linear recurrence when there are no gaps."""
        rng = random.Random(5)
        for _ in range(80):
            msa = random_msa(rng, rng.randint(1, 4), rng.randint(1, 9), alphabet="ACG")
            linear = minmaxlength_linear_gapless(compute_v_f_gapless(msa))
            assert elastic_repeat_free_minmax(msa).scores == linear.scores, msa.rows


# ── TestOptimality ─────────────────────────────────────────────────────────


def _check_against_exhaustive(msa: Msa, mode: ValidityMode, kind: ScoreKind) -> None:
    result = segment(msa, mode=mode, score=kind).segmentation
    best = exhaustive_segmentation(msa, mode, kind)
    if best is None:
        assert result.fallback
        assert result.intervals == ((1, msa.n),)
        return
    assert not result.fallback
    assert result.score == best.score, (msa.rows, mode, kind)
    assert all(is_valid_segment(msa, x, y, mode) for x, y in result.intervals)


class TestOptimality:
    """Optimal scores agree with exhaustive search over all partitions."""

    @pytest.mark.parametrize("kind", [MAXB, MINMAX])
    @pytest.mark.parametrize("mode", [RF, SRF])
    def test_gapless(self, mode: ValidityMode, kind: ScoreKind) -> None:
        """Random gapless MSAs over a binary alphabet."""
        rng = random.Random(6)
        for _ in range(80):
            _check_against_exhaustive(random_msa(rng, rng.randint(1, 4), rng.randint(1, 9), alphabet="AC"), mode, kind)

    @pytest.mark.parametrize("seed", [7, 17, 27])
    @pytest.mark.parametrize("kind", [MAXB, MINMAX])
    def test_gapped_semi_repeat_free(self, kind: ScoreKind, seed: int) -> None:
        """Random gapped MSAs in semi-repeat-free mode, 300 over the three seeds."""
        rng = random.Random(seed)
        for _ in range(100):
            msa = random_msa(rng, rng.randint(1, 4), rng.randint(1, 8), alphabet="ACG", gap_probability=0.25)
            _check_against_exhaustive(msa, SRF, kind)

    @pytest.mark.parametrize("seed", [8, 18, 28])
    def test_gapped_repeat_free_minmax(self, seed: int) -> None:
        """Random gapped MSAs under the elastic repeat-free recurrence, 300 over the three seeds."""
        rng = random.Random(seed)
        for _ in range(100):
            msa = random_msa(rng, rng.randint(1, 4), rng.randint(1, 8), alphabet="ACG", gap_probability=0.25)
            _check_against_exhaustive(msa, RF, MINMAX)


# ── TestSegmentDriver ──────────────────────────────────────────────────────


class TestSegmentDriver:
    """Tests for engine resolution, fallback and strict mode."""

    def test_resolve_engine(self, msa_a: Msa, msa_b: Msa) -> None:
        """auto picks linear only for gapless repeat-free input."""
        assert resolve_engine(msa_a, RF, Engine.AUTO) is Engine.GAPLESS_LINEAR
        assert resolve_engine(msa_a, SRF, Engine.AUTO) is Engine.ELASTIC
        assert resolve_engine(msa_b, RF, Engine.AUTO) is Engine.ELASTIC
        assert resolve_engine(msa_b, SRF, Engine.GAPLESS_LINEAR) is Engine.GAPLESS_LINEAR

    def test_defaults(self, msa_a: Msa) -> None:
        """Default mode and score produce the two-block segmentation."""
        result = segment(msa_a)
        assert result.segmentation.mode is SRF
        assert result.segmentation.intervals == ((1, 2), (3, 4))
        assert result.table is not None

    def test_fallback(self, msa_infeasible: Msa, caplog: pytest.LogCaptureFixture) -> None:
        """An infeasible MSA becomes a single block with a warning."""
        with caplog.at_level(logging.WARNING):
            result = segment(msa_infeasible)
        assert result.segmentation.fallback
        assert result.segmentation.intervals == ((1, 2),)
        assert "falling back" in caplog.text

    def test_strict(self, msa_infeasible: Msa) -> None:
        """Strict mode raises instead."""
        with pytest.raises(InfeasibleError):
            segment(msa_infeasible, strict=True)

    def test_linear_engine_on_gapped(self, msa_b: Msa) -> None:
        """The gapless engine refuses gaps."""
        with pytest.raises(ValidationError, match="gapless"):
            segment(msa_b, engine=Engine.GAPLESS_LINEAR)

    def test_repeat_free_maxblocks_on_gapped(self, msa_b: Msa) -> None:
        """Repeat-free maxblocks has no gapped recurrence."""
        with pytest.raises(ValidationError):
            segment(msa_b, mode=RF, score=MAXB)

    def test_block_heights(self, msa_a: Msa) -> None:
        """Two distinct strings in the first block, one in the second."""
        seg = segment(msa_a).segmentation
        assert block_heights(msa_a, seg) == (2, 1)


# ── TestSegmentationDocument ───────────────────────────────────────────────


class TestSegmentationDocument:
    """Tests for the segmentation JSON document."""

    def test_round_trip(self, tmp_path) -> None:  # type: ignore[no-untyped-def]
        """A written document reads back equal."""
        seg = Segmentation(intervals=((1, 2), (3, 4)), mode=RF, score_kind=MAXB, score=2)
        path = write_segmentation(seg, tmp_path / "seg.json")
        assert read_segmentation(path) == seg
        assert '"score_kind": "maxblocks"' in serialize_segmentation(seg)

    def test_fallback_flag_survives(self) -> None:
        """The fallback flag is part of the document."""
        seg = Segmentation(intervals=((1, 3),), mode=SRF, score_kind=MINMAX, score=3, fallback=True)
        assert parse_segmentation(serialize_segmentation(seg)).fallback

    def test_bad_json(self) -> None:
        """Syntax errors carry a line number."""
        with pytest.raises(InputFormatError) as info:
            parse_segmentation('{\n"version": 1,\n')
        assert info.value.line is not None

    def test_broken_partition(self) -> None:
        """Intervals that do not tile the columns are rejected."""
        doc = (
            '{"version": 1, "mode": "repeat-free", "score_kind": "maxblocks", '
            '"score": 2, "intervals": [[1, 2], [4, 5]]}'
        )
        with pytest.raises(InputFormatError, match="Malformed"):
            parse_segmentation(doc)

    def test_wrong_version(self) -> None:
        """Unknown versions are refused."""
        with pytest.raises(InputFormatError):
            parse_segmentation('{"version": 99}')

    def test_score_helper(self) -> None:
        """The two objectives on one interval list."""
        intervals = ((1, 1), (2, 4))
        assert score_intervals(intervals, MAXB) == 2
        assert score_intervals(intervals, MINMAX) == 3
