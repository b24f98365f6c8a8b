"""Tabular rendering shared by the command-line tools.

Three output formats, selectable everywhere:

* aligned text   — fixed-width columns for terminals,
* tab-separated  — header line plus one row per line,
* records        — line-delimited JSON objects with a ``record`` type field,
  parseable back via :func:`parse_records` without loss.

Also defines the frequency-table report (givenness category x grammatical
position x clause context) with its derived TC+RC and total rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .corpus import AggregateCounts
from .givenness import GivennessCategory
from .queries import ClauseContext, GrammaticalPosition

Cell = object  # str | int | float in practice


class ReportFormat(Enum):
    ALIGNED_TEXT = "text"
    TAB_SEPARATED = "tsv"
    STRUCTURED_RECORDS = "records"


def _format_cell(value: Cell) -> str:
    if isinstance(value, float):
        return f"{value:g}"
    return str(value)


def render_rows(
    columns: Sequence[str],
    rows: Sequence[Sequence[Cell]],
    fmt: ReportFormat,
    record_type: str,
) -> str:
    """Render a header plus rows in the requested format.

    ``record_type`` becomes the ``record`` field of every JSON line so mixed
    streams remain self-describing.
    """
    for row in rows:
        if len(row) != len(columns):
            raise ValueError(
                f"row has {len(row)} cells, expected {len(columns)}: {row!r}"
            )
    if fmt is ReportFormat.STRUCTURED_RECORDS:
        lines = [
            json.dumps({"record": record_type, **dict(zip(columns, row))})
            for row in rows
        ]
        return "\n".join(lines)
    if fmt is ReportFormat.TAB_SEPARATED:
        lines = ["\t".join(columns)]
        lines += ["\t".join(_format_cell(c) for c in row) for row in rows]
        return "\n".join(lines)
    # Aligned text: numbers right-aligned, everything else left-aligned.
    text_rows = [[_format_cell(c) for c in row] for row in rows]
    widths = [
        max([len(columns[i])] + [len(r[i]) for r in text_rows])
        for i in range(len(columns))
    ]
    numeric = [
        all(isinstance(row[i], (int, float)) for row in rows) if rows else False
        for i in range(len(columns))
    ]

    def align(cells: Sequence[str]) -> str:
        out = []
        for i, cell in enumerate(cells):
            out.append(cell.rjust(widths[i]) if numeric[i] else cell.ljust(widths[i]))
        return "  ".join(out).rstrip()

    lines = [align(columns), align(["-" * w for w in widths])]
    lines += [align(r) for r in text_rows]
    return "\n".join(lines)


def parse_records(text: str) -> list[dict]:
    """Inverse of the records format: one dict per non-blank line."""
    return [json.loads(line) for line in text.splitlines() if line.strip()]


# Frequency table: within each position group the TC and RC columns come
# before their derived sum and the matrix column, and subjects precede
# non-subjects; --from-counts feeding and the tests both rely on this order.
TABLE1_COLUMNS = (
    "givenness",
    "subj_tc",
    "subj_rc",
    "subj_tc_rc",
    "subj_matrix",
    "nonsubj_tc",
    "nonsubj_rc",
    "nonsubj_tc_rc",
    "nonsubj_matrix",
)

# Per-category base cells accepted by from_counts, in feed order.
BASE_CELLS = (
    (GrammaticalPosition.SUBJECT, ClauseContext.EMBEDDED_TC),
    (GrammaticalPosition.SUBJECT, ClauseContext.EMBEDDED_RC),
    (GrammaticalPosition.SUBJECT, ClauseContext.MATRIX),
    (GrammaticalPosition.NON_SUBJECT, ClauseContext.EMBEDDED_TC),
    (GrammaticalPosition.NON_SUBJECT, ClauseContext.EMBEDDED_RC),
    (GrammaticalPosition.NON_SUBJECT, ClauseContext.MATRIX),
)


@dataclass(frozen=True)
class Table1Row:
    """One category's base counts; TC+RC is always derived, never stored."""

    subj_tc: int
    subj_rc: int
    subj_matrix: int
    nonsubj_tc: int
    nonsubj_rc: int
    nonsubj_matrix: int

    def rendered(self) -> tuple[int, ...]:
        return (
            self.subj_tc,
            self.subj_rc,
            self.subj_tc + self.subj_rc,
            self.subj_matrix,
            self.nonsubj_tc,
            self.nonsubj_rc,
            self.nonsubj_tc + self.nonsubj_rc,
            self.nonsubj_matrix,
        )


@dataclass(frozen=True)
class Table1Block:
    """One corpus's frequency table: six category rows plus a total row."""

    label: str
    rows: dict[GivennessCategory, Table1Row]

    def total_row(self) -> tuple[int, ...]:
        return tuple(
            sum(row.rendered()[i] for row in self.rows.values()) for i in range(8)
        )

    @classmethod
    def from_aggregate(cls, agg: AggregateCounts, label: str = "corpus") -> "Table1Block":
        rows = {
            cat: Table1Row(*(agg.cell(cat, pos, ctx) for pos, ctx in BASE_CELLS))
            for cat in GivennessCategory
        }
        return cls(label=label, rows=rows)

    @classmethod
    def from_counts(cls, values: Sequence[int], label: str = "counts") -> "Table1Block":
        """Build from 36 integers: one six-number group per givenness category
        in declaration order; within each group subj TC, subj RC, subj matrix,
        nonsubj TC, nonsubj RC, nonsubj matrix.  TC+RC and totals are derived.
        """
        if len(values) != 36:
            raise ValueError(f"expected 36 counts (6 categories x 6 cells), got {len(values)}")
        if any(v < 0 for v in values):
            raise ValueError("counts must be non-negative")
        rows = {}
        for i, cat in enumerate(GivennessCategory):
            rows[cat] = Table1Row(*values[6 * i: 6 * i + 6])
        return cls(label=label, rows=rows)


@dataclass(frozen=True)
class Table1Report:
    blocks: tuple[Table1Block, ...]

    def render(self, fmt: ReportFormat) -> str:
        chunks = []
        for block in self.blocks:
            rows: list[list[Cell]] = [
                [cat.value, *block.rows[cat].rendered()] for cat in GivennessCategory
            ]
            rows.append(["total", *block.total_row()])
            if fmt is ReportFormat.STRUCTURED_RECORDS:
                body = render_rows(
                    ("corpus", *TABLE1_COLUMNS),
                    [[block.label, *row] for row in rows],
                    fmt,
                    "table1-row",
                )
                chunks.append(body)
            else:
                body = render_rows(TABLE1_COLUMNS, rows, fmt, "table1-row")
                chunks.append(f"{block.label}\n{body}")
        return "\n\n".join(chunks)
