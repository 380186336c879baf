# -*- coding: utf-8 -*-
"""
Module Name: test_dialect.py

Description:
This module contains the unit tests for the Dialect module: the Dialect value,
the character policy and candidate dialect construction.

Author: elreysausage
Date: 2025-06-05
"""

import unittest

from core.dialect import (
    CharacterPolicy,
    Dialect,
    DialectError,
    filter_urls,
    get_delimiters,
    get_dialects,
    get_quotechars,
    is_potential_escape,
    masked_by_quote,
)


class TestDialect(unittest.TestCase):
    """
    Unit tests for the Dialect value.
    """
    def test_rejects_colliding_fields(self):
        """
        Asserts:
            Equal non-empty fields and multi-character fields raise DialectError.
        """
        with self.assertRaises(DialectError):
            Dialect(',', ',', '')
        with self.assertRaises(DialectError):
            Dialect(',,')
        Dialect('', '', '')

    def test_canonical_order_puts_empty_first(self):
        dialects = [Dialect(';'), Dialect(',', '"'), Dialect(), Dialect(',')]
        ordered = sorted(dialects, key=lambda dialect: dialect.sort_key)
        self.assertEqual(ordered, [Dialect(), Dialect(','), Dialect(',', '"'), Dialect(';')])

    def test_dict_conversion(self):
        dialect = Dialect('\t', "'", '\\')
        self.assertEqual(dialect.to_dict(), {'delimiter': '\t', 'quotechar': "'", 'escapechar': '\\'})
        self.assertEqual(Dialect.from_dict(dialect.to_dict()), dialect)
        self.assertEqual(Dialect.from_dict({'delimiter': ';'}), Dialect(';', '', ''))


class TestCandidates(unittest.TestCase):
    """
    Unit tests for candidate dialect construction.
    """
    def test_filter_urls(self):
        """
        Asserts:
            Scheme and www. URLs collapse to a single letter.
        """
        self.assertEqual(filter_urls('see https://example.com/a;b here'), 'see U here')
        self.assertEqual(filter_urls('see http://a.b/c?d=1,2 now'), 'see U now')
        self.assertEqual(filter_urls('www.example.org|3'), 'U|3')
        self.assertEqual(filter_urls('no url, here'), 'no url, here')

    def test_urls_end_at_quotes_and_escapes(self):
        """
        Asserts:
            Quote characters and characters outside URLs (backslash) end a URL,
            so quoting and escaping after a URL cell stay visible.
        """
        text = '~https://www.cedar.org/opal~:~12\\~30~'
        self.assertEqual(filter_urls(text), '~U~:~12\\~30~')
        self.assertEqual(filter_urls('https://a.org/x:b\\:c'), 'U\\:c')
        self.assertEqual(filter_urls("'www.a.org'"), "'U'")
        self.assertEqual(filter_urls('~www.a.org~', CharacterPolicy(allowed_quotes={'"'})), 'U')
        self.assertIn(Dialect(':', '~', '\\'), get_dialects(text))

    def test_get_delimiters(self):
        """
        Asserts:
            Letters, digits, brackets and blocked characters are excluded; tab is kept.
        """
        delimiters = get_delimiters('ab1,c;d\te.f/g(h)')
        self.assertEqual(delimiters, {'', ',', ';', '\t'})

    def test_get_quotechars(self):
        self.assertEqual(get_quotechars('a"b~c'), {'', '"', '~'})
        self.assertEqual(get_quotechars('abc'), {''})

    def test_is_potential_escape(self):
        self.assertTrue(is_potential_escape('\\'))
        self.assertFalse(is_potential_escape('!'))
        self.assertFalse(is_potential_escape('-'))

    def test_masked_by_quote(self):
        """
        Asserts:
            A delimiter only inside quoted sections is masked, one outside is not.
        """
        self.assertTrue(masked_by_quote('"a,b"\n"c,d"', Dialect(',', '"')))
        self.assertFalse(masked_by_quote('a,"b,c"', Dialect(',', '"')))
        self.assertFalse(masked_by_quote('"a\\"b",c', Dialect(',', '"', '\\')))
        self.assertTrue(masked_by_quote('"a,""b"""', Dialect(',', '"')))
        self.assertTrue(masked_by_quote('abc', Dialect(';')))

    def test_simple_file(self):
        self.assertEqual(get_dialects('a,b\n1,2'), [Dialect(), Dialect(',')])

    def test_fully_quoted_rows_drop_masked_delimiter(self):
        """
        Asserts:
            A file whose rows are entirely quoted does not offer the comma with the double quote.
        """
        dialects = get_dialects('"a,b,c"\n"1,2,3"')
        self.assertNotIn(Dialect(',', '"'), dialects)
        self.assertIn(Dialect(',', ''), dialects)
        self.assertIn(Dialect('', '"'), dialects)

    def test_escape_candidates(self):
        """
        Asserts:
            A backslash before the delimiter yields an escape candidate, but only
            for dialects where it precedes the delimiter or quote.
        """
        dialects = get_dialects('a\\,b,c')
        self.assertIn(Dialect(',', '', '\\'), dialects)
        self.assertNotIn(Dialect('', '', '\\'), dialects)

    def test_url_punctuation_is_not_a_delimiter(self):
        dialects = get_dialects('https://example.com/x;y\nhttps://example.com/z;w')
        self.assertEqual(dialects, [Dialect()])

    def test_always_contains_empty_dialect(self):
        self.assertIn(Dialect(), get_dialects('word'))
        self.assertEqual(get_dialects('word'), [Dialect()])


class TestCharacterPolicy(unittest.TestCase):
    def test_from_json_document(self):
        """
        Asserts:
            Missing keys keep defaults; unknown keys are rejected.
        """
        policy = CharacterPolicy.from_json('{"allowed_quotes": ["\\""]}')
        self.assertEqual(policy.allowed_quotes, frozenset({'"'}))
        self.assertIn('.', policy.blocked_delimiters)
        with self.assertRaises(ValueError):
            CharacterPolicy.from_dict({'quotes': ['"']})

    def test_policy_restricts_quotes(self):
        policy = CharacterPolicy(allowed_quotes={'"'})
        self.assertEqual(get_quotechars("a'b\"c", policy), {'', '"'})

    def test_round_trip_dict(self):
        policy = CharacterPolicy()
        self.assertEqual(CharacterPolicy.from_dict(policy.to_dict()), policy)


if __name__ == '__main__':
    unittest.main()
