# -*- coding: utf-8 -*-
"""
Module Name: full.py

Description:
The Full module scores candidates with the complete consistency measure, the
product of the pattern score and the clamped type score. Because the clamped
type score never exceeds one, a candidate whose pattern score is already below
the best consistency seen so far is skipped without computing its type score.

Author: elreysausage
Date: 2025-06-20
"""

from core.dialect import Dialect
from core.parser import CellTable, RowPatternTable
from core.scoring import ScoreBreakdown, pattern_score
from core.strategy import DetectionStrategy


class FullStrategy(DetectionStrategy):
    """
    The FullStrategy class ranks candidates by pattern score times type score
    and breaks exact ties.
    """
    def can_skip(self, patterns: RowPatternTable, q_max: float) -> bool:
        return pattern_score(patterns, self.consts) < q_max

    def score(self, text: str, dialect: Dialect, table: CellTable, patterns: RowPatternTable) -> ScoreBreakdown:
        return self.base_breakdown(table, patterns)


class NoTieBreakStrategy(FullStrategy):
    """
    The full consistency measure with tie-breaking disabled, so every exact tie
    is reported as a failure.
    """
    BREAK_TIES: bool = False
