# -*- coding: utf-8 -*-
"""
Module Name: wrangler.py

Description:
The Wrangler module implements a baseline scorer in the style of interactive
data wrangling tools. A parse is rewarded for columns whose cells share a data
type and penalised for empty cells and for cells that still contain another
potential delimiter.

Notes:
Ragged rows are padded on the right to the widest row. Padding slots count as
empty cells but carry no type, so they do not dilute column homogeneity.

Author: elreysausage
Date: 2025-06-23
"""

import pandas as pd

from core.dialect import EMPTY, Dialect, filter_urls, get_delimiters
from core.parser import CellTable, RowPatternTable
from core.scoring import ScoreBreakdown
from core.strategy import DetectionStrategy
from core.typeinfer import detect_type


def wrangler_score(
        table: CellTable,
        dialect: Dialect,
        other_delimiters: set[str],
        empty_weight: float = 1.0,
        delimiter_weight: float = 1.0
) -> float:
    """
    Computes the baseline score of a parsed table.

    Arguments:
        table: The parse of the file under the dialect.
        dialect: The dialect the table was parsed with.
        other_delimiters: Potential delimiters of the file; the dialect's own
            delimiter is ignored.
        empty_weight: Weight of the empty-cell penalty.
        delimiter_weight: Weight of the leftover-delimiter penalty.

    Returns:
        Mean column homogeneity (sum of squared type proportions) minus the
        weighted fraction of empty slots and of slots containing another
        potential delimiter.
    """
    frame = pd.DataFrame(table.rows)
    if frame.size == 0:
        return 0.0
    padded = frame.isna()
    types = frame.apply(lambda column: column.map(
        lambda cell: detect_type(cell).value if isinstance(cell, str) else None))
    homogeneity = types.apply(
        lambda column: (column.value_counts(normalize=True) ** 2).sum()).mean()

    others = {char for char in other_delimiters if char != EMPTY and char != dialect.delimiter}
    empty_slots = int(padded.to_numpy().sum()) + int((frame == '').to_numpy().sum())
    delimiter_slots = int(frame.apply(lambda column: column.map(
        lambda cell: isinstance(cell, str) and any(char in cell for char in others))).to_numpy().sum())
    return float(homogeneity
                 - empty_weight * empty_slots / frame.size
                 - delimiter_weight * delimiter_slots / frame.size)


class WranglerStrategy(DetectionStrategy):
    """
    The WranglerStrategy class ranks candidates by the baseline score.

    Attributes:
        EMPTY_WEIGHT: Weight of the empty-cell penalty.
        DELIMITER_WEIGHT: Weight of the leftover-delimiter penalty.
    """
    EMPTY_WEIGHT: float = 1.0
    DELIMITER_WEIGHT: float = 1.0

    def prepare(self, text: str) -> None:
        self.other_delimiters = get_delimiters(filter_urls(text, self.policy), self.policy)

    def score(self, text: str, dialect: Dialect, table: CellTable, patterns: RowPatternTable) -> ScoreBreakdown:
        result = self.base_breakdown(table, patterns)
        q = wrangler_score(table, dialect, self.other_delimiters, self.EMPTY_WEIGHT, self.DELIMITER_WEIGHT)
        return ScoreBreakdown(
            pattern=result.pattern,
            type_raw=result.type_raw,
            type_clamped=result.type_clamped,
            q=q,
            cells_total=result.cells_total,
            patterns_distinct=result.patterns_distinct,
        )
