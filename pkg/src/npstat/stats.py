"""2x2 contingency tables and Pearson chi-square tests.

The statistic is the uncorrected Pearson form for a table (a, b / c, d):

    N * (a*d - b*c)**2 / ((a+b) * (c+d) * (a+c) * (b+d))

with the cross product computed in exact integer arithmetic, so corpus-scale
cell counts cannot overflow.  No continuity correction is applied.
Significance is reported as a band against the df=1 critical values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import TYPE_CHECKING, Iterable

from .givenness import GivennessCategory
from .queries import ClauseContext, GrammaticalPosition

if TYPE_CHECKING:
    from .corpus import AggregateCounts


class DegenerateMargin(ValueError):
    """A row or column of the table sums to zero; the test is undefined."""


class ZeroDenominator(ZeroDivisionError):
    pass


class SignificanceBand(Enum):
    P_LT_0_001 = "p<0.001"
    P_LT_0_01 = "p<0.01"
    P_LT_0_05 = "p<0.05"
    NOT_SIGNIFICANT = "not significant"


# df=1 critical values.
CRITICAL_VALUES = (
    (SignificanceBand.P_LT_0_001, 10.828),
    (SignificanceBand.P_LT_0_01, 6.635),
    (SignificanceBand.P_LT_0_05, 3.841),
)


@dataclass(frozen=True)
class ContingencyTable2x2:
    """Counts laid out row 1 = (a, b), row 2 = (c, d).

    In the pronoun/indefinite cross-tabulations, row 1 is pronoun, row 2 is
    indefinite, column 1 is subject and column 2 is non-subject.
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        for cell in (self.a, self.b, self.c, self.d):
            if cell < 0:
                raise ValueError("cell counts must be non-negative")

    @property
    def total(self) -> int:
        return self.a + self.b + self.c + self.d

    def cells(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)


@dataclass(frozen=True)
class ChiSquareResult:
    statistic: float
    degrees_of_freedom: int
    significance_band: SignificanceBand

    def p_value(self) -> float:
        """Exact upper-tail probability; valid for df=1 only."""
        if self.degrees_of_freedom != 1:
            raise ValueError("exact p-value implemented for df=1 only")
        return math.erfc(math.sqrt(self.statistic / 2.0))


def chi_square_2x2(table: ContingencyTable2x2) -> ChiSquareResult:
    """Uncorrected Pearson chi-square for a 2x2 table, df=1."""
    a, b, c, d = table.cells()
    row1, row2, col1, col2 = a + b, c + d, a + c, b + d
    if min(row1, row2, col1, col2) == 0:
        raise DegenerateMargin(
            f"table {table.cells()} has a zero row or column sum")
    numerator = table.total * (a * d - b * c) ** 2
    statistic = numerator / (row1 * row2 * col1 * col2)
    band = SignificanceBand.NOT_SIGNIFICANT
    for candidate, threshold in CRITICAL_VALUES:
        if statistic >= threshold:
            band = candidate
            break
    return ChiSquareResult(statistic=statistic, degrees_of_freedom=1,
                           significance_band=band)


def build_pronoun_indefinite_table(
    aggregate: "AggregateCounts",
    context_filter: Iterable[ClauseContext] = tuple(ClauseContext),
) -> ContingencyTable2x2:
    """Cross-tabulate pronoun/indefinite against subject/non-subject.

    Cells are summed over the given clause contexts (default: all four):
    a = pronoun subjects, b = pronoun non-subjects, c = indefinite subjects,
    d = indefinite non-subjects.
    """
    contexts = set(context_filter)

    def cell(category: GivennessCategory, position: GrammaticalPosition) -> int:
        return sum(aggregate.cell(category, position, ctx) for ctx in contexts)

    return ContingencyTable2x2(
        a=cell(GivennessCategory.PRONOUN, GrammaticalPosition.SUBJECT),
        b=cell(GivennessCategory.PRONOUN, GrammaticalPosition.NON_SUBJECT),
        c=cell(GivennessCategory.INDEFINITE, GrammaticalPosition.SUBJECT),
        d=cell(GivennessCategory.INDEFINITE, GrammaticalPosition.NON_SUBJECT),
    )


def ratio_report(numerator: int, denominator: int) -> float:
    """Percentage 100*numerator/denominator, rounded half-up to 2 decimals."""
    if denominator <= 0:
        raise ZeroDenominator("denominator must be positive")
    share = Decimal(100) * Decimal(numerator) / Decimal(denominator)
    return float(share.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))
