# -*- coding: utf-8 -*-
"""
Module Name: strategy.py

Description:
The Strategy module defines the `DetectionStrategy` abstract base class, a template
for scoring candidate dialects of a file. A strategy decides how a candidate is
scored, whether it may be skipped against the best score seen so far, and whether
exact ties are broken afterwards.

Author: elreysausage
Date: 2025-06-20
"""

from abc import ABC, abstractmethod

from core.dialect import DEFAULT_POLICY, CharacterPolicy, Dialect
from core.parser import CellTable, RowPatternTable, scan
from core.scoring import DEFAULT_CONSTANTS, ScoreBreakdown, ScoreConstants, breakdown


class DetectionStrategy(ABC):
    """
    Abstract base class for dialect scoring strategies.

    Attributes:
        BREAK_TIES: Whether exact ties are passed to tie-breaking.
    """
    BREAK_TIES: bool = True

    def __init__(
            self,
            name: str,
            consts: ScoreConstants = DEFAULT_CONSTANTS,
            policy: CharacterPolicy = DEFAULT_POLICY
    ):
        """
        Initializes the DetectionStrategy base class.

        Parameters:
            name: The name of the strategy, as used on the command line.
            consts: The scoring constants.
            policy: The character policy for candidate construction.
        """
        self.name = name
        self.consts = consts
        self.policy = policy

    def prepare(self, text: str) -> None:
        """
        Hook called once per file before any candidate is scored.

        Parameters:
            text: The decoded file content.
        """
        pass

    def evaluate(self, text: str, dialect: Dialect, q_max: float, prune: bool = True) -> ScoreBreakdown | None:
        """
        Scores one candidate.

        Parameters:
            text: The decoded file content.
            dialect: The candidate dialect.
            q_max: The best score seen so far for this file.
            prune: Allow skipping the candidate when it cannot reach q_max.

        Returns:
            The breakdown, or None if the candidate was skipped.
        """
        table, patterns = scan(text, dialect, self.policy.allowed_quotes)
        if prune and self.can_skip(patterns, q_max):
            return None
        return self.score(text, dialect, table, patterns)

    def can_skip(self, patterns: RowPatternTable, q_max: float) -> bool:
        """
        Checks whether a candidate cannot reach q_max from its row patterns alone.

        Notes:
            Strategies whose score is not bounded by the pattern score never skip.
        """
        return False

    def base_breakdown(self, table: CellTable, patterns: RowPatternTable) -> ScoreBreakdown:
        """
        Computes the pattern and type components shared by every strategy.
        """
        return breakdown(table, patterns, self.consts)

    @abstractmethod
    def score(self, text: str, dialect: Dialect, table: CellTable, patterns: RowPatternTable) -> ScoreBreakdown:
        """
        Scores a parsed candidate.

        Parameters:
            text: The decoded file content.
            dialect: The candidate dialect.
            table: The parse of the text under the dialect.
            patterns: The row patterns of the same parse.

        Returns:
            ScoreBreakdown: The breakdown whose q field is used for ranking.
        """
        pass
