# -*- coding: utf-8 -*-
"""
Module Name: detector.py

Description:
The Detector module searches the candidate dialects of a file for the one with
the highest score. Candidates are visited in canonical order, the set of
candidates sharing the best score is collected exactly, and ties are resolved
with rules that prefer an unused quote character, escape character or
delimiter whenever dropping it leaves the parse unchanged.

Notes:
The outcome is a pure function of the text, variant, constants and policy.
Ties use exact floating-point equality.

Author: elreysausage
Date: 2025-06-24
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

from core.dialect import DEFAULT_POLICY, EMPTY, CharacterPolicy, Dialect, get_dialects
from core.parser import CellTable, parse
from core.scoring import DEFAULT_CONSTANTS, ScoreBreakdown, ScoreConstants
from core.strategy import DetectionStrategy
from core.utils import unicode_version
from strategies.full import FullStrategy, NoTieBreakStrategy
from strategies.pattern import PatternOnlyStrategy
from strategies.typeonly import TypeOnlyStrategy
from strategies.wrangler import WranglerStrategy

logger = logging.getLogger(__name__)

FIELDS = ('delimiter', 'quotechar', 'escapechar')


class DetectionStatus(Enum):
    DETECTED = 'Detected'
    TIE_UNBROKEN = 'TieUnbroken'
    EMPTY_INPUT = 'EmptyInput'


class DetectorVariant(Enum):
    """
    The available scoring strategies, keyed by their command-line names.
    """
    FULL = 'full'
    PATTERN = 'pattern'
    TYPE = 'type'
    NO_TIE = 'no-tie'
    WRANGLER = 'wrangler'

    @classmethod
    def from_name(cls, name: str) -> 'DetectorVariant':
        try:
            return cls(name)
        except ValueError as e:
            raise ValueError(
                f"Invalid variant {name!r} - choose from {', '.join(v.value for v in cls)}") from e

    def build(self, consts: ScoreConstants = DEFAULT_CONSTANTS,
              policy: CharacterPolicy = DEFAULT_POLICY) -> DetectionStrategy:
        """
        Instantiates the strategy implementing this variant.
        """
        return STRATEGIES[self](self.value, consts, policy)


STRATEGIES: dict[DetectorVariant, type[DetectionStrategy]] = {
    DetectorVariant.FULL: FullStrategy,
    DetectorVariant.PATTERN: PatternOnlyStrategy,
    DetectorVariant.TYPE: TypeOnlyStrategy,
    DetectorVariant.NO_TIE: NoTieBreakStrategy,
    DetectorVariant.WRANGLER: WranglerStrategy,
}


@dataclass
class DetectionOutcome:
    """
    The result of detecting the dialect of one file.

    Attributes:
        status: Detected, TieUnbroken or EmptyInput.
        dialect: The detected dialect, present iff status is Detected.
        tie_set: The unresolved tied candidates, present iff status is TieUnbroken.
        breakdowns: Score breakdown of every evaluated candidate, in canonical order.
        pruned: Candidates skipped because they could not reach the best score.
    """
    status: DetectionStatus
    dialect: Dialect | None = None
    tie_set: list[Dialect] = field(default_factory=list)
    breakdowns: dict[Dialect, ScoreBreakdown] = field(default_factory=dict)
    pruned: list[Dialect] = field(default_factory=list)

    @property
    def candidates(self) -> list[Dialect]:
        """
        All candidates, evaluated or pruned, in canonical order.
        """
        return sorted([*self.breakdowns, *self.pruned], key=lambda dialect: dialect.sort_key)

    def to_dict(self, verbose: bool = False) -> dict:
        """
        Serializes the outcome with ε encoded as the empty string.

        Arguments:
            verbose: Include the breakdown of every evaluated candidate.
        """
        result = {
            'status': self.status.value,
            'dialect': self.dialect.to_dict() if self.dialect else None,
            'ties': [dialect.to_dict() for dialect in self.tie_set],
            'unicode_version': unicode_version(),
        }
        if verbose:
            result['scores'] = [{'dialect': dialect.to_dict(), **score.to_dict()}
                                for dialect, score in self.breakdowns.items()]
            result['pruned'] = [dialect.to_dict() for dialect in self.pruned]
        return result


def detect(
        text: str,
        variant: DetectorVariant = DetectorVariant.FULL,
        consts: ScoreConstants = DEFAULT_CONSTANTS,
        policy: CharacterPolicy = DEFAULT_POLICY,
        prune: bool = True,
        max_chars: int | None = None,
        candidates: list[Dialect] | None = None
) -> DetectionOutcome:
    """
    Detects the dialect of a file.

    Arguments:
        text: The decoded file content.
        variant: The scoring strategy.
        consts: The scoring constants.
        policy: The character policy for candidate construction.
        prune: Skip candidates whose bound is below the best score so far.
        max_chars: Only score the first max_chars characters when set.
        candidates: The dialects to score, in this order. Defaults to the
            candidate dialects of the text in canonical order; the outcome
            does not depend on the order.

    Returns:
        DetectionOutcome: Detected with the dialect, TieUnbroken with the tied
        candidates, or EmptyInput for an empty text.
    """
    if max_chars is not None:
        if max_chars < 1:
            raise ValueError(f"max_chars must be positive, got {max_chars}")
        text = text[:max_chars]
    if not text:
        return DetectionOutcome(DetectionStatus.EMPTY_INPUT)

    strategy = variant.build(consts, policy)
    strategy.prepare(text)
    if candidates is None:
        candidates = get_dialects(text, policy)

    q_max = -math.inf
    ties: list[Dialect] = []
    breakdowns: dict[Dialect, ScoreBreakdown] = {}
    pruned: list[Dialect] = []
    for dialect in candidates:
        score = strategy.evaluate(text, dialect, q_max, prune)
        if score is None:
            pruned.append(dialect)
            continue
        breakdowns[dialect] = score
        if score.q > q_max:
            q_max = score.q
            ties = [dialect]
        elif score.q == q_max:
            ties.append(dialect)
    logger.debug("Scored %d of %d candidates, %d tied at q=%r",
                 len(breakdowns), len(candidates), len(ties), q_max)

    ties.sort(key=lambda dialect: dialect.sort_key)
    pruned.sort(key=lambda dialect: dialect.sort_key)
    breakdowns = dict(sorted(breakdowns.items(), key=lambda item: item[0].sort_key))
    winner = ties[0] if len(ties) == 1 else None
    if winner is None and strategy.BREAK_TIES:
        winner = break_ties(text, ties)
    if winner is not None:
        logger.info("Detected %s with variant %s", winner, variant.value)
        return DetectionOutcome(DetectionStatus.DETECTED, winner, breakdowns=breakdowns, pruned=pruned)
    logger.info("Unbroken tie between %d candidates", len(ties))
    return DetectionOutcome(DetectionStatus.TIE_UNBROKEN, tie_set=ties, breakdowns=breakdowns, pruned=pruned)


def _differing_field(a: Dialect, b: Dialect) -> str | None:
    diffs = [name for name in FIELDS if getattr(a, name) != getattr(b, name)]
    return diffs[0] if len(diffs) == 1 else None


def break_ties(text: str, ties: list[Dialect]) -> Dialect | None:
    """
    Resolves an exact tie by preferring candidates without an unused component.

    Arguments:
        text: The decoded file content.
        ties: The tied candidates.

    Returns:
        The single surviving dialect, or None if the tie cannot be broken.

    Notes:
        A candidate is dropped when another tied candidate differs from it in
        exactly one field, has ε in that field, and parses the text the same.
        A candidate is also dropped in favour of one differing only in the
        delimiter when its own delimiter never separates cells and the other
        delimiter is ε or does. All drops of one pass are decided together and
        passes repeat until nothing changes.
    """
    cache: dict[Dialect, CellTable] = {}

    def parsed(dialect: Dialect) -> CellTable:
        if dialect not in cache:
            cache[dialect] = parse(text, dialect)
        return cache[dialect]

    def inert_delimiter(dialect: Dialect) -> bool:
        return dialect.delimiter == EMPTY or parsed(dialect) == parsed(dialect.replace(delimiter=EMPTY))

    def dominates(a: Dialect, b: Dialect) -> bool:
        name = _differing_field(a, b)
        if name is None:
            return False
        if getattr(a, name) == EMPTY:
            return parsed(a) == parsed(b)
        if name == 'delimiter':
            return inert_delimiter(b) and not inert_delimiter(a)
        return False

    survivors = sorted(set(ties), key=lambda dialect: dialect.sort_key)
    while len(survivors) > 1:
        dominated = {b for b in survivors for a in survivors if a != b and dominates(a, b)}
        if not dominated or len(dominated) == len(survivors):
            break
        survivors = [dialect for dialect in survivors if dialect not in dominated]
    return survivors[0] if len(survivors) == 1 else None
