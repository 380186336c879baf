# -*- coding: utf-8 -*-
"""
Module Name: test_scoring.py

Description:
This module contains the unit tests for the Scoring module: the pattern score,
the type score and their product.

Author: elreysausage
Date: 2025-06-18
"""

import unittest

from core.dialect import Dialect
from core.parser import CellTable, RowPatternTable
from core.scoring import (
    EmptyInputError,
    ScoreConstants,
    consistency,
    pattern_score,
    type_score,
)


class TestPatternScore(unittest.TestCase):
    """
    Unit tests for pattern_score.
    """
    def test_single_pattern(self):
        self.assertAlmostEqual(pattern_score(RowPatternTable({'CDC': 3})), 1.5)

    def test_single_cell_rows_use_alpha(self):
        """
        Asserts:
            One-cell rows contribute alpha per row instead of zero.
        """
        self.assertAlmostEqual(pattern_score(RowPatternTable({'C': 5})), 0.005)
        self.assertAlmostEqual(pattern_score(RowPatternTable({'C': 5}), ScoreConstants(alpha=0.1)), 0.5)

    def test_mixed_patterns_divide_by_distinct_count(self):
        score = pattern_score(RowPatternTable({'CDCDC': 4, 'CDC': 1}))
        self.assertAlmostEqual(score, (4 * 2 / 3 + 1 / 2) / 2)

    def test_stray_quotes_do_not_change_length(self):
        self.assertEqual(pattern_score(RowPatternTable({'CQCDC': 2})), pattern_score(RowPatternTable({'CDC': 2})))

    def test_score_grows_with_rows(self):
        """
        Asserts:
            Doubling every row count doubles the score.
        """
        small = pattern_score(RowPatternTable({'CDCDC': 3, 'CDC': 2}))
        large = pattern_score(RowPatternTable({'CDCDC': 6, 'CDC': 4}))
        self.assertAlmostEqual(large, 2 * small)

    def test_no_rows(self):
        with self.assertRaises(EmptyInputError):
            pattern_score(RowPatternTable({}))


class TestTypeScore(unittest.TestCase):
    def test_fraction_of_known_cells(self):
        raw, clamped = type_score(CellTable([['a', '??~'], ['1', '2']]))
        self.assertEqual(raw, 0.75)
        self.assertEqual(clamped, 0.75)

    def test_zero_is_clamped_to_beta(self):
        raw, clamped = type_score(CellTable([['??~']]))
        self.assertEqual(raw, 0.0)
        self.assertEqual(clamped, 1e-10)

    def test_no_cells(self):
        with self.assertRaises(EmptyInputError):
            type_score(CellTable([]))


class TestConsistency(unittest.TestCase):
    """
    Unit tests for consistency and the score constants.
    """
    def test_comma_file(self):
        """
        Asserts:
            Two two-cell rows of known types score exactly one.
        """
        result = consistency('a,b\n1,2', Dialect(','))
        self.assertEqual(result.pattern, 1.0)
        self.assertEqual(result.type_raw, 1.0)
        self.assertEqual(result.q, 1.0)
        self.assertEqual(result.cells_total, 4)
        self.assertEqual(result.patterns_distinct, 1)

    def test_empty_dialect(self):
        """
        Asserts:
            Without a delimiter every row is one cell and 'a,b' is of unknown type.
        """
        result = consistency('a,b\n1,2', Dialect())
        self.assertAlmostEqual(result.pattern, 0.002)
        self.assertEqual(result.type_raw, 0.5)
        self.assertAlmostEqual(result.q, 0.001)

    def test_unknown_file_uses_beta(self):
        result = consistency('??~', Dialect())
        self.assertEqual(result.type_clamped, 1e-10)
        self.assertAlmostEqual(result.q, 1e-13)

    def test_empty_text(self):
        with self.assertRaises(EmptyInputError):
            consistency('', Dialect(','))

    def test_constants_must_be_positive(self):
        for kwargs in ({'alpha': 0}, {'beta': 0}, {'alpha': -1e-3}):
            with self.subTest(**kwargs):
                with self.assertRaises(ValueError):
                    ScoreConstants(**kwargs)

    def test_breakdown_to_dict(self):
        keys = set(consistency('a;b', Dialect(';')).to_dict())
        self.assertEqual(keys, {'pattern', 'type_raw', 'type_clamped', 'q', 'cells_total', 'patterns_distinct'})


if __name__ == '__main__':
    unittest.main()
