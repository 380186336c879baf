# -*- coding: utf-8 -*-
"""
Module Name: typeonly.py

Description:
The Typeonly module ranks candidates by the clamped type score alone, ignoring
row patterns. No candidate is ever skipped, since the type score is not bounded
by anything computed earlier.

Author: elreysausage
Date: 2025-06-20
"""

from dataclasses import replace

from core.dialect import Dialect
from core.parser import CellTable, RowPatternTable
from core.scoring import ScoreBreakdown
from core.strategy import DetectionStrategy


class TypeOnlyStrategy(DetectionStrategy):
    """
    The TypeOnlyStrategy class scores q = max(beta, T).
    """
    def score(self, text: str, dialect: Dialect, table: CellTable, patterns: RowPatternTable) -> ScoreBreakdown:
        result = self.base_breakdown(table, patterns)
        return replace(result, q=result.type_clamped)
