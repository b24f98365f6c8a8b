"""Directory ingestion and corpus-level aggregation.

Files are visited in lexicographic path order.  A file that fails to parse is
counted, reported through logging, and skipped; the run continues.  Counts
accumulate into :class:`AggregateCounts`, a dense
(givenness category x grammatical position x clause context) table whose
``merge`` is associative and commutative, so per-file work can run in
parallel and combine deterministically.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator

from .givenness import ClassifierConfig, DEFAULT_CONFIG, GivennessCategory, classify_np
from .queries import ClauseContext, GrammaticalPosition, extract_np_occurrences
from .treebank import Tree, TreebankSyntaxError, parse_trees

log = logging.getLogger(__name__)

CellKey = tuple[GivennessCategory, GrammaticalPosition, ClauseContext]


class RootNotFound(FileNotFoundError):
    pass


class Dialect(Enum):
    """Top-level layout hint; parsing itself handles either transparently."""

    WRAPPED = "wrapped"
    UNWRAPPED = "unwrapped"
    AUTO = "auto"


@dataclass(frozen=True)
class CorpusSource:
    root_path: Path
    include_glob: str = "*"
    dialect: Dialect = Dialect.AUTO


def _all_cell_keys() -> list[CellKey]:
    return [
        (cat, pos, ctx)
        for cat in GivennessCategory
        for pos in GrammaticalPosition
        for ctx in ClauseContext
    ]


def _zero_cells() -> dict[CellKey, int]:
    return {key: 0 for key in _all_cell_keys()}


@dataclass
class AggregateCounts:
    """Dense occurrence counts plus ingestion counters."""

    cells: dict[CellKey, int] = field(default_factory=_zero_cells)
    files_processed: int = 0
    sentences_processed: int = 0
    files_skipped: int = 0

    def cell(self, category: GivennessCategory, position: GrammaticalPosition,
             context: ClauseContext) -> int:
        return self.cells[(category, position, context)]

    def increment(self, category: GivennessCategory, position: GrammaticalPosition,
                  context: ClauseContext, by: int = 1) -> None:
        self.cells[(category, position, context)] += by

    def total(self) -> int:
        return sum(self.cells.values())

    @classmethod
    def from_cells(cls, cells: dict[CellKey, int]) -> "AggregateCounts":
        agg = cls()
        for key, value in cells.items():
            agg.cells[key] += value
        return agg


def merge(x: AggregateCounts, y: AggregateCounts) -> AggregateCounts:
    """Cell-wise and counter-wise sum; identity element is AggregateCounts()."""
    out = AggregateCounts()
    for key in out.cells:
        out.cells[key] = x.cells[key] + y.cells[key]
    out.files_processed = x.files_processed + y.files_processed
    out.sentences_processed = x.sentences_processed + y.sentences_processed
    out.files_skipped = x.files_skipped + y.files_skipped
    return out


def corpus_files(source: CorpusSource) -> list[Path]:
    """All matching files under the root, lexicographic by relative path."""
    root = Path(source.root_path)
    if not root.is_dir():
        raise RootNotFound(f"corpus root {root} does not exist")
    files = [p for p in root.rglob(source.include_glob) if p.is_file()]
    return sorted(files, key=lambda p: p.relative_to(root).as_posix())


class CorpusStream:
    """Iterator of (file_id, tree) pairs with live ingestion counters.

    ``file_id`` is the path relative to the corpus root.  Parse failures skip
    the whole file (incrementing ``files_skipped``) and emit a diagnostic.
    """

    def __init__(self, source: CorpusSource):
        self.source = source
        self.files_processed = 0
        self.files_skipped = 0
        self.sentences = 0
        self._iterator = self._generate(corpus_files(source))

    def _generate(self, files: list[Path]) -> Iterator[tuple[str, Tree]]:
        root = Path(self.source.root_path)
        for path in files:
            file_id = path.relative_to(root).as_posix()
            try:
                trees = parse_trees(path.read_text(encoding="utf-8"))
            except (TreebankSyntaxError, UnicodeDecodeError) as err:
                position = getattr(err, "position", "?")
                log.warning("skipping %s: %s (offset %s)", file_id, err, position)
                self.files_skipped += 1
                continue
            self.files_processed += 1
            for tree in trees:
                self.sentences += 1
                yield file_id, tree

    def __iter__(self) -> "CorpusStream":
        return self

    def __next__(self) -> tuple[str, Tree]:
        return next(self._iterator)


def ingest(source: CorpusSource) -> CorpusStream:
    """Open a corpus directory as a stream of (file_id, tree) pairs."""
    return CorpusStream(source)


def aggregate(
    stream: Iterable[tuple[str, Tree]], config: ClassifierConfig = DEFAULT_CONFIG
) -> AggregateCounts:
    """Run extraction + classification over a stream and tally every cell.

    Sentence indices restart at 0 for each file_id, matching the order the
    stream delivers a file's sentences.
    """
    agg = AggregateCounts()
    next_index: dict[str, int] = {}
    for file_id, tree in stream:
        sentence_index = next_index.get(file_id, 0)
        next_index[file_id] = sentence_index + 1
        try:
            for occ in extract_np_occurrences(tree, file_id, sentence_index):
                agg.increment(classify_np(occ.node, config), occ.position, occ.context)
        except Exception:
            log.exception("failed on %s sentence %d", file_id, sentence_index)
            continue
        agg.sentences_processed += 1
    for attr in ("files_processed", "files_skipped"):
        value = getattr(stream, attr, None)
        if value is not None:
            setattr(agg, attr, value)
    return agg


def _aggregate_one_file(path: Path, root: Path, config: ClassifierConfig) -> AggregateCounts:
    file_id = path.relative_to(root).as_posix()
    agg = AggregateCounts()
    try:
        trees = parse_trees(path.read_text(encoding="utf-8"))
    except (TreebankSyntaxError, UnicodeDecodeError) as err:
        log.warning("skipping %s: %s", file_id, err)
        agg.files_skipped = 1
        return agg
    agg = aggregate(((file_id, t) for t in trees), config)
    agg.files_processed = 1
    return agg


def aggregate_corpus(
    source: CorpusSource,
    config: ClassifierConfig = DEFAULT_CONFIG,
    max_workers: int | None = None,
) -> AggregateCounts:
    """Aggregate a whole corpus, optionally with per-file worker threads.

    Partial results are merged in file order, so the outcome is identical
    regardless of scheduling.
    """
    files = corpus_files(source)
    root = Path(source.root_path)
    if max_workers is not None and max_workers > 1 and len(files) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            partials = list(pool.map(lambda p: _aggregate_one_file(p, root, config), files))
    else:
        partials = [_aggregate_one_file(p, root, config) for p in files]
    result = AggregateCounts()
    for partial in partials:
        result = merge(result, partial)
    return result
