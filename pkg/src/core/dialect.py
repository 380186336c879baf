# -*- coding: utf-8 -*-
"""
Module Name: dialect.py

Description:
The Dialect module defines the `Dialect` value (delimiter, quote character,
escape character) and builds the set of candidate dialects for a file from the
characters the file actually contains. URLs are filtered first, delimiters and
quote characters are selected by Unicode category and explicit block/allow
lists, escape characters are those punctuation marks seen directly before a
delimiter or quote character, and dialects whose delimiter only ever occurs
inside quoted sections are dropped.

Notes:
The empty string is used throughout as the empty marker ε, so `Dialect('', '', '')`
is the single-column dialect without quoting or escaping.

Author: elreysausage
Date: 2025-06-02
"""

import json
import logging
import re
import string
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

logger = logging.getLogger(__name__)

EMPTY = ''

# Scheme URLs (scheme://...) and bare www. hosts, continued by URL characters only.
URL_START = r'(?:[A-Za-z][A-Za-z0-9+.\-]*://|www\.)'
URL_CHARS = frozenset(string.ascii_letters + string.digits + "-._~:/?#[]@!$&'()*+,;=%")
URL_REPLACEMENT = 'U'


class DialectError(ValueError):
    """
    Raised when a dialect has malformed or colliding fields.
    """


@dataclass(frozen=True)
class Dialect:
    """
    A CSV dialect: the triple of delimiter, quote character and escape character.

    Attributes:
        delimiter: The cell separator, or '' for none.
        quotechar: The quote character, or '' for none.
        escapechar: The escape character, or '' for none.
    """
    delimiter: str = EMPTY
    quotechar: str = EMPTY
    escapechar: str = EMPTY

    def __post_init__(self):
        for name in ('delimiter', 'quotechar', 'escapechar'):
            value = getattr(self, name)
            if not isinstance(value, str) or len(value) > 1:
                raise DialectError(f"{name} must be a single character or empty, got {value!r}")
        fields = [self.delimiter, self.quotechar, self.escapechar]
        non_empty = [value for value in fields if value]
        if len(non_empty) != len(set(non_empty)):
            raise DialectError(
                f"Dialect fields must be distinct: delimiter={self.delimiter!r}, "
                f"quotechar={self.quotechar!r}, escapechar={self.escapechar!r}")

    @property
    def sort_key(self) -> tuple[int, int, int]:
        """
        Canonical ordering key: code point per field, with ε before everything.
        """
        return tuple(ord(value) if value else -1
                     for value in (self.delimiter, self.quotechar, self.escapechar))

    def replace(self, **changes) -> 'Dialect':
        """
        Returns a copy with the given fields replaced.
        """
        values = {'delimiter': self.delimiter,
                  'quotechar': self.quotechar,
                  'escapechar': self.escapechar}
        values.update(changes)
        return Dialect(**values)

    def to_dict(self) -> dict[str, str]:
        """
        Serializes the dialect with ε encoded as the empty string.
        """
        return {'delimiter': self.delimiter,
                'quotechar': self.quotechar,
                'escapechar': self.escapechar}

    @classmethod
    def from_dict(cls, data: dict) -> 'Dialect':
        """
        Builds a dialect from a mapping with delimiter/quotechar/escapechar keys.

        Arguments:
            data: The mapping; missing keys are treated as ε.

        Returns:
            The dialect.
        """
        return cls(data.get('delimiter') or EMPTY,
                   data.get('quotechar') or EMPTY,
                   data.get('escapechar') or EMPTY)

    def __str__(self) -> str:
        return f"({self.delimiter!r}, {self.quotechar!r}, {self.escapechar!r})"


@dataclass(frozen=True)
class CharacterPolicy:
    """
    Character sets that steer candidate construction.

    Attributes:
        blocked_delimiters: Characters that are never delimiters (tab excepted).
        blocked_categories: Unicode general categories that are never delimiters.
        allowed_quotes: The only characters that may act as quote characters.
        blocked_escapes: Punctuation that is never an escape character.
    """
    blocked_delimiters: frozenset = field(
        default_factory=lambda: frozenset({'.', '/', '"', "'"}))
    blocked_categories: frozenset = field(
        default_factory=lambda: frozenset({'Lu', 'Ll', 'Lt', 'Lm', 'Lo', 'Nd',
                                           'Nl', 'No', 'Ps', 'Pe', 'Cc', 'Co'}))
    allowed_quotes: frozenset = field(
        default_factory=lambda: frozenset({"'", '"', '~'}))
    blocked_escapes: frozenset = field(
        default_factory=lambda: frozenset({'!', '?', '"', "'", '.', ',', ';',
                                           ':', '%', '*', '&', '#'}))

    KEYS = ('blocked_delimiters', 'blocked_categories', 'allowed_quotes', 'blocked_escapes')

    def __post_init__(self):
        for key in self.KEYS:
            object.__setattr__(self, key, frozenset(getattr(self, key)))
        for key in ('blocked_delimiters', 'allowed_quotes', 'blocked_escapes'):
            bad = [value for value in getattr(self, key) if len(value) != 1]
            if bad:
                raise ValueError(f"{key} must contain single characters, got {sorted(bad)}")

    def to_dict(self) -> dict[str, list[str]]:
        return {key: sorted(getattr(self, key)) for key in self.KEYS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> 'CharacterPolicy':
        """
        Builds a policy from a mapping; missing keys keep their defaults.

        Raises:
            ValueError: If the mapping contains unknown keys.
        """
        unknown = set(data) - set(cls.KEYS)
        if unknown:
            raise ValueError(
                f"Unknown policy keys {sorted(unknown)} - choose from {', '.join(cls.KEYS)}")
        return cls(**{key: frozenset(values) for key, values in data.items()})

    @classmethod
    def from_json(cls, source: str | Path) -> 'CharacterPolicy':
        """
        Loads a policy from a JSON file path or a JSON document string.
        """
        text = str(source)
        if not text.lstrip().startswith('{'):
            text = Path(source).read_text(encoding='utf-8')
        return cls.from_dict(json.loads(text))


DEFAULT_POLICY = CharacterPolicy()


@lru_cache(maxsize=16)
def url_pattern(quotes: frozenset = DEFAULT_POLICY.allowed_quotes) -> re.Pattern:
    """
    Compiles the URL pattern for a set of quote characters.

    Notes:
        A URL ends at the first character that is not a URL character or is
        one of the quote characters, so quoting around a URL is never consumed.
    """
    chars = ''.join(sorted(URL_CHARS - quotes))
    return re.compile(URL_START + '[' + re.escape(chars) + ']+')


def filter_urls(text: str, policy: CharacterPolicy = DEFAULT_POLICY) -> str:
    """
    Replaces every URL in the text with a single letter.

    Arguments:
        text: The decoded file content.
        policy: The character policy; its quote characters terminate URLs.

    Returns:
        The text with URLs collapsed, so URL punctuation does not produce
        spurious candidate delimiters.
    """
    return url_pattern(frozenset(policy.allowed_quotes)).sub(URL_REPLACEMENT, text)


def get_delimiters(text: str, policy: CharacterPolicy = DEFAULT_POLICY) -> set[str]:
    """
    Selects the potential delimiters of a URL-filtered text.

    Arguments:
        text: The URL-filtered text.
        policy: The character policy.

    Returns:
        ε plus every distinct character that is a tab, or is neither blocked
        nor in a blocked Unicode category.
    """
    delimiters = {EMPTY}
    for char in set(text):
        if char == '\t' or (char not in policy.blocked_delimiters
                            and unicodedata.category(char) not in policy.blocked_categories):
            delimiters.add(char)
    return delimiters


def get_quotechars(text: str, policy: CharacterPolicy = DEFAULT_POLICY) -> set[str]:
    """
    Selects the potential quote characters of a URL-filtered text.
    """
    return (set(policy.allowed_quotes) & set(text)) | {EMPTY}


def is_potential_escape(char: str, policy: CharacterPolicy = DEFAULT_POLICY) -> bool:
    """
    Checks whether a character may act as an escape character.

    Arguments:
        char: A single character.
        policy: The character policy.

    Returns:
        True if the character is 'Punctuation, other' and not blocked.
    """
    return char not in policy.blocked_escapes and unicodedata.category(char) == 'Po'


def masked_by_quote(text: str, dialect: Dialect) -> bool:
    """
    Checks whether the delimiter of a dialect only occurs inside quoted sections.

    Arguments:
        text: The decoded file content.
        dialect: A dialect with a non-empty delimiter.

    Returns:
        True if no occurrence of the delimiter lies outside a quoted section
        (including when the delimiter does not occur at all).

    Notes:
        The escape character only affects quote tracking: an escaped quote
        neither opens nor closes a section. Inside a section a doubled quote
        is a literal quote.
    """
    delimiter, quote, escape = dialect.delimiter, dialect.quotechar, dialect.escapechar
    if not quote:
        return delimiter not in text
    in_quotes = False
    escape_next = False
    i, n = 0, len(text)
    while i < n:
        char = text[i]
        if escape_next:
            escape_next = False
            if char in (quote, escape):
                i += 1
                continue
        if escape and char == escape:
            escape_next = True
        elif char == quote:
            if not in_quotes:
                in_quotes = True
            elif i + 1 < n and text[i + 1] == quote:
                i += 1
            else:
                in_quotes = False
        elif char == delimiter and not in_quotes:
            return False
        i += 1
    return True


def _is_valid_triple(delimiter: str, quote: str, escape: str) -> bool:
    non_empty = [value for value in (delimiter, quote, escape) if value]
    return len(non_empty) == len(set(non_empty))


def get_dialects(text: str, policy: CharacterPolicy = DEFAULT_POLICY) -> list[Dialect]:
    """
    Constructs the candidate dialects of a file.

    Arguments:
        text: The decoded file content.
        policy: The character policy.

    Returns:
        The candidate dialects, duplicate-free and in canonical order
        (delimiter, then quote, then escape code point, ε first). The
        dialect ('', '', '') is always a member.
    """
    filtered = filter_urls(text, policy)
    delimiters = get_delimiters(filtered, policy)
    quotechars = get_quotechars(filtered, policy)

    escapes_present = {char for char in set(filtered) if is_potential_escape(char, policy)}
    followers: dict[str, set[str]] = {escape: set() for escape in escapes_present}
    if escapes_present:
        for u, v in zip(filtered, filtered[1:]):
            if u in escapes_present:
                followers[u].add(v)

    candidates = set()
    for delimiter in delimiters:
        for quote in quotechars:
            targets = {delimiter, quote} - {EMPTY}
            escapes = {EMPTY} | {u for u, after in followers.items() if after & targets}
            for escape in escapes:
                if not _is_valid_triple(delimiter, quote, escape):
                    continue
                dialect = Dialect(delimiter, quote, escape)
                if delimiter and masked_by_quote(text, dialect):
                    logger.debug("Dropping %s: delimiter masked by quotes", dialect)
                    continue
                candidates.add(dialect)
    dialects = sorted(candidates, key=lambda dialect: dialect.sort_key)
    logger.debug("Constructed %d candidate dialects", len(dialects))
    return dialects
