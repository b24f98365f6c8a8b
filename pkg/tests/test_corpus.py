"""Ingestion, aggregation and merge tests."""

import shutil

import pytest

from npstat.corpus import (
    AggregateCounts,
    CorpusSource,
    Dialect,
    RootNotFound,
    aggregate,
    aggregate_corpus,
    corpus_files,
    ingest,
    merge,
)
from npstat.givenness import GivennessCategory
from npstat.queries import ClauseContext, GrammaticalPosition

EC = GivennessCategory.EMPTY_CATEGORY
PRO = GivennessCategory.PRONOUN
NAME = GivennessCategory.PROPER_NAME
DEF = GivennessCategory.DEFINITE
INDEF = GivennessCategory.INDEFINITE
SUBJ = GrammaticalPosition.SUBJECT
NONSUBJ = GrammaticalPosition.NON_SUBJECT
MATRIX = ClauseContext.MATRIX
TC = ClauseContext.EMBEDDED_TC
RC = ClauseContext.EMBEDDED_RC
OTHER = ClauseContext.EMBEDDED_OTHER

# Every non-zero cell of the committed fixture corpus, counted by hand.
FIXTURE_CELLS = {
    (DEF, SUBJ, MATRIX): 6,
    (DEF, NONSUBJ, MATRIX): 2,
    (DEF, SUBJ, TC): 1,
    (DEF, SUBJ, RC): 1,
    (DEF, SUBJ, OTHER): 1,
    (DEF, NONSUBJ, TC): 1,
    (PRO, SUBJ, MATRIX): 3,
    (PRO, SUBJ, TC): 1,
    (PRO, SUBJ, OTHER): 1,
    (NAME, SUBJ, MATRIX): 1,
    (INDEF, NONSUBJ, MATRIX): 3,
    (EC, SUBJ, OTHER): 1,
}
FIXTURE_TOTAL = 22


def random_aggregate(seed: int) -> AggregateCounts:
    import random

    rng = random.Random(seed)
    agg = AggregateCounts()
    for key in agg.cells:
        agg.cells[key] = rng.randrange(0, 50)
    agg.files_processed = rng.randrange(0, 5)
    agg.sentences_processed = rng.randrange(0, 100)
    agg.files_skipped = rng.randrange(0, 3)
    return agg


class TestIngest:
    def test_fixture_corpus_order_and_counts(self, fixture_corpus):
        stream = ingest(CorpusSource(fixture_corpus))
        pairs = list(stream)
        assert len(pairs) == 10
        assert [fid for fid, _ in pairs] == ["a.mrg"] * 4 + ["b.mrg"] * 3 + ["c.mrg"] * 3
        assert stream.files_processed == 3
        assert stream.files_skipped == 0
        assert stream.sentences == 10

    def test_missing_root_raises(self, tmp_path):
        with pytest.raises(RootNotFound):
            ingest(CorpusSource(tmp_path / "nowhere"))

    def test_empty_directory_yields_empty_stream(self, tmp_path):
        stream = ingest(CorpusSource(tmp_path))
        assert list(stream) == []
        assert stream.files_processed == 0

    def test_glob_filters_files(self, fixture_corpus):
        pairs = list(ingest(CorpusSource(fixture_corpus, include_glob="a.*")))
        assert len(pairs) == 4
        assert {fid for fid, _ in pairs} == {"a.mrg"}

    def test_malformed_file_is_skipped_not_fatal(self, fixture_corpus, broken_dir, tmp_path):
        shutil.copy(fixture_corpus / "a.mrg", tmp_path / "a.mrg")
        shutil.copy(fixture_corpus / "c.mrg", tmp_path / "c.mrg")
        shutil.copy(broken_dir / "malformed.mrg", tmp_path / "b.mrg")
        stream = ingest(CorpusSource(tmp_path))
        pairs = list(stream)
        assert len(pairs) == 7  # the two good files' sentences
        assert stream.files_skipped == 1
        assert stream.files_processed == 2

    def test_recursive_lexicographic_order(self, fixture_corpus, tmp_path):
        (tmp_path / "sub").mkdir()
        shutil.copy(fixture_corpus / "a.mrg", tmp_path / "z.mrg")
        shutil.copy(fixture_corpus / "c.mrg", tmp_path / "sub" / "x.mrg")
        files = corpus_files(CorpusSource(tmp_path))
        assert [p.name for p in files] == ["x.mrg", "z.mrg"]  # sub/x.mrg < z.mrg
        ids = [fid for fid, _ in ingest(CorpusSource(tmp_path))]
        assert ids == ["sub/x.mrg"] * 3 + ["z.mrg"] * 4

    def test_source_defaults(self, fixture_corpus):
        source = CorpusSource(fixture_corpus)
        assert source.include_glob == "*"
        assert source.dialect is Dialect.AUTO


class TestAggregate:
    def test_fixture_cells_match_hand_count(self, fixture_corpus):
        agg = aggregate(ingest(CorpusSource(fixture_corpus)))
        for key, count in agg.cells.items():
            assert count == FIXTURE_CELLS.get(key, 0), key
        assert agg.total() == FIXTURE_TOTAL
        assert agg.files_processed == 3
        assert agg.sentences_processed == 10
        assert agg.files_skipped == 0

    def test_complement_clause_cells(self, fixture_corpus):
        agg = aggregate(ingest(CorpusSource(fixture_corpus)))
        assert agg.cell(DEF, SUBJ, TC) == 1
        assert agg.cell(DEF, SUBJ, RC) == 1
        assert agg.cell(DEF, NONSUBJ, MATRIX) >= 1

    def test_empty_stream_is_all_zero(self):
        agg = aggregate([])
        assert agg.total() == 0
        assert agg.sentences_processed == 0

    def test_split_and_merge_equals_single_pass(self, fixture_corpus):
        pairs = list(ingest(CorpusSource(fixture_corpus)))
        single = aggregate(pairs)
        first, second = aggregate(pairs[:5]), aggregate(pairs[5:])
        combined = merge(first, second)
        assert combined.cells == single.cells
        assert combined.sentences_processed == single.sentences_processed

    def test_four_way_split_and_merge(self, fixture_corpus):
        pairs = list(ingest(CorpusSource(fixture_corpus)))
        single = aggregate(pairs)
        combined = AggregateCounts()
        for start in range(0, 10, 3):
            combined = merge(combined, aggregate(pairs[start: start + 3]))
        assert combined.cells == single.cells
        assert combined.sentences_processed == single.sentences_processed


class TestMerge:
    def test_zero_is_identity(self):
        agg = random_aggregate(11)
        merged = merge(agg, AggregateCounts())
        assert merged.cells == agg.cells
        assert merged.files_processed == agg.files_processed
        assert merged.sentences_processed == agg.sentences_processed
        assert merged.files_skipped == agg.files_skipped

    def test_commutative(self):
        x, y = random_aggregate(21), random_aggregate(22)
        assert merge(x, y).cells == merge(y, x).cells
        assert merge(x, y).sentences_processed == merge(y, x).sentences_processed

    def test_associative(self):
        x, y, z = random_aggregate(31), random_aggregate(32), random_aggregate(33)
        left = merge(merge(x, y), z)
        right = merge(x, merge(y, z))
        assert left.cells == right.cells
        assert left.files_processed == right.files_processed

    def test_cellwise_sum(self):
        x, y = random_aggregate(41), random_aggregate(42)
        merged = merge(x, y)
        for key in merged.cells:
            assert merged.cells[key] == x.cells[key] + y.cells[key]

    def test_from_cells_constructor(self):
        agg = AggregateCounts.from_cells({(DEF, SUBJ, MATRIX): 7})
        assert agg.cell(DEF, SUBJ, MATRIX) == 7
        assert agg.total() == 7


class TestAggregateCorpus:
    def test_matches_streaming_aggregation(self, fixture_corpus):
        streamed = aggregate(ingest(CorpusSource(fixture_corpus)))
        sequential = aggregate_corpus(CorpusSource(fixture_corpus))
        threaded = aggregate_corpus(CorpusSource(fixture_corpus), max_workers=4)
        assert sequential.cells == streamed.cells == threaded.cells
        assert sequential.files_processed == threaded.files_processed == 3
        assert sequential.sentences_processed == threaded.sentences_processed == 10

    def test_parallel_schedule_is_deterministic(self, smoke_corpus):
        runs = [
            aggregate_corpus(CorpusSource(smoke_corpus), max_workers=workers)
            for workers in (1, 2, 8)
        ]
        first = runs[0]
        for other in runs[1:]:
            assert other.cells == first.cells
            assert other.sentences_processed == first.sentences_processed

    def test_bad_file_counted_and_skipped(self, fixture_corpus, broken_dir, tmp_path):
        shutil.copy(fixture_corpus / "a.mrg", tmp_path / "a.mrg")
        shutil.copy(broken_dir / "malformed.mrg", tmp_path / "bad.mrg")
        agg = aggregate_corpus(CorpusSource(tmp_path), max_workers=2)
        assert agg.files_processed == 1
        assert agg.files_skipped == 1
        assert agg.sentences_processed == 4

    def test_all_files_bad_yields_zero_counts(self, broken_dir, tmp_path):
        shutil.copy(broken_dir / "malformed.mrg", tmp_path / "only.mrg")
        agg = aggregate_corpus(CorpusSource(tmp_path))
        assert agg.files_processed == 0
        assert agg.files_skipped == 1
        assert agg.total() == 0
