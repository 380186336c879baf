# -*- coding: utf-8 -*-
"""
Module Name: scoring.py

Description:
The Scoring module computes the consistency of a file under a dialect. The
pattern score rewards files whose rows share few, long row patterns, the type
score is the fraction of cells with a recognised data type, and the
consistency measure is their product.

Notes:
Pattern terms are summed in sorted pattern order with compensated summation,
so equal scores compare bit-exactly across runs and platforms.

Author: elreysausage
Date: 2025-06-18
"""

from dataclasses import asdict, dataclass

from core.dialect import Dialect
from core.parser import CellTable, RowPatternTable, scan
from core.typeinfer import is_known_type
from core.utils import exact_sum


class EmptyInputError(ValueError):
    """
    Raised when a file has no rows or no cells to score.
    """


@dataclass(frozen=True)
class ScoreConstants:
    """
    Constants of the consistency measure.

    Attributes:
        alpha: Numerator floor for single-cell row patterns.
        beta: Lower bound substituted for a zero type score.
    """
    alpha: float = 1e-3
    beta: float = 1e-10

    def __post_init__(self):
        if not self.alpha > 0 or not self.beta > 0:
            raise ValueError(f"alpha and beta must be positive, got alpha={self.alpha}, beta={self.beta}")


DEFAULT_CONSTANTS = ScoreConstants()


@dataclass(frozen=True)
class ScoreBreakdown:
    """
    The score components of one (file, dialect) pair.

    Attributes:
        pattern: The pattern score P.
        type_raw: The unclamped type score.
        type_clamped: max(beta, type_raw).
        q: The score used for ranking.
        cells_total: Number of cells in the parse.
        patterns_distinct: Number of distinct row patterns.
    """
    pattern: float
    type_raw: float
    type_clamped: float
    q: float
    cells_total: int
    patterns_distinct: int

    def to_dict(self) -> dict:
        return asdict(self)


def pattern_score(patterns: RowPatternTable, consts: ScoreConstants = DEFAULT_CONSTANTS) -> float:
    """
    Computes the pattern score of a row pattern table.

    Arguments:
        patterns: Row patterns with their row counts.
        consts: The scoring constants.

    Returns:
        (1/K) * sum over patterns of N_k * max(alpha, L_k - 1) / L_k, with K the
        number of distinct patterns, N_k the row count and L_k the row length.

    Raises:
        EmptyInputError: If the table holds no rows.
    """
    if patterns.n_rows == 0:
        raise EmptyInputError("Cannot compute a pattern score without rows")
    lengths = patterns.lengths
    terms = (patterns.patterns[key] * max(consts.alpha, lengths[key] - 1) / lengths[key]
             for key in sorted(patterns.patterns))
    return exact_sum(terms) / patterns.n_distinct


def type_score(table: CellTable, consts: ScoreConstants = DEFAULT_CONSTANTS) -> tuple[float, float]:
    """
    Computes the fraction of cells with a known data type.

    Arguments:
        table: The parsed table.
        consts: The scoring constants.

    Returns:
        A tuple containing:
        - float: The raw fraction of known cells.
        - float: The fraction clamped below at beta.

    Raises:
        EmptyInputError: If the table holds no cells.
    """
    total = table.n_cells
    if total == 0:
        raise EmptyInputError("Cannot compute a type score without cells")
    known = sum(1 for cell in table.cells() if is_known_type(cell))
    raw = known / total
    return raw, max(consts.beta, raw)


def consistency(text: str, dialect: Dialect, consts: ScoreConstants = DEFAULT_CONSTANTS) -> ScoreBreakdown:
    """
    Scores a file under a dialect from a single parse.

    Arguments:
        text: The decoded file content.
        dialect: The dialect to score.
        consts: The scoring constants.

    Returns:
        The score breakdown, with q = pattern * type_clamped.

    Raises:
        EmptyInputError: If the text is empty.
    """
    if not text:
        raise EmptyInputError("Cannot score an empty file")
    table, patterns = scan(text, dialect)
    return breakdown(table, patterns, consts)


def breakdown(table: CellTable, patterns: RowPatternTable, consts: ScoreConstants = DEFAULT_CONSTANTS) -> ScoreBreakdown:
    """
    Combines the pattern and type scores of an existing parse.
    """
    pattern = pattern_score(patterns, consts)
    type_raw, type_clamped = type_score(table, consts)
    return ScoreBreakdown(
        pattern=pattern,
        type_raw=type_raw,
        type_clamped=type_clamped,
        q=pattern * type_clamped,
        cells_total=table.n_cells,
        patterns_distinct=patterns.n_distinct,
    )
