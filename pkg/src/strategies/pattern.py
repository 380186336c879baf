# -*- coding: utf-8 -*-
"""
Module Name: pattern.py

Description:
The Pattern module ranks candidates by the pattern score alone, ignoring cell
types.

Author: elreysausage
Date: 2025-06-20
"""

from dataclasses import replace

from core.dialect import Dialect
from core.parser import CellTable, RowPatternTable
from core.scoring import ScoreBreakdown, pattern_score
from core.strategy import DetectionStrategy


class PatternOnlyStrategy(DetectionStrategy):
    """
    The PatternOnlyStrategy class scores q = P.
    """
    def can_skip(self, patterns: RowPatternTable, q_max: float) -> bool:
        return pattern_score(patterns, self.consts) < q_max

    def score(self, text: str, dialect: Dialect, table: CellTable, patterns: RowPatternTable) -> ScoreBreakdown:
        result = self.base_breakdown(table, patterns)
        return replace(result, q=result.pattern)
