# -*- coding: utf-8 -*-
"""
Module Name: typeinfer.py

Description:
The Typeinfer module maps a cell string to a data type with an ordered list of
anchored regular expressions. Types are tested in a fixed order and the first
match wins: empty, URL, email, grouped number, plain number, time, percentage,
currency, alphanumeric, N/A, date, combined date and time. A cell matching
none of them is of unknown type.

Notes:
Cells are matched as-is; surrounding whitespace is part of the value.

Author: elreysausage
Date: 2025-06-16
"""

import itertools
import json
import re
import sys
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from core.utils import unicode_version


class DataType(Enum):
    """
    The known cell types, in detection order, plus UNKNOWN.
    """
    EMPTY = 'empty'
    URL = 'url'
    EMAIL = 'email'
    NUMBER_GROUPED = 'number_grouped'
    NUMBER_PLAIN = 'number_plain'
    TIME = 'time'
    PERCENTAGE = 'percentage'
    CURRENCY = 'currency'
    ALPHANUMERIC = 'alphanumeric'
    NA = 'na'
    DATE = 'date'
    DATETIME = 'datetime'
    UNKNOWN = 'unknown'


SIGN = r'[+-]?'
NUMBER_GROUPED = SIGN + r'(?:\d{1,3}(?:,\d{3})+(?:\.\d+)?|\d{1,3}(?:\.\d{3})+(?:,\d+)?)'
NUMBER_PLAIN = SIGN + r'(?:\d+(?:[.,]\d+)?|[.,]\d+)(?:[eE][+-]?\d+)?'
TIME = r'(?:[01]?\d|2[0-3]):[0-5]\d(?::[0-5]\d)?'
PERCENTAGE = rf'(?:{NUMBER_GROUPED}|{NUMBER_PLAIN})%'
URL = r'(?:[A-Za-z][A-Za-z0-9+.\-]*://|www\.)[^\s/]+(?:/\S*)?'
EMAIL = r'[\w.+\-]+@[\w\-]+(?:\.[\w\-]+)*\.[A-Za-z]{2,}'
NA = r'n/a|N/A'

# Letters are word characters that are neither digits nor underscore.
LETTER = r'[^\W\d_]'
ALNUM_SPECIALS = r'[ .!?()！？（）．]'
ALNUM_TAIL = rf'(?:[^\W_]|{ALNUM_SPECIALS})*'
ALPHANUMERIC = rf'\d+ ?{LETTER}+{ALNUM_TAIL}|{LETTER}+{ALNUM_TAIL}'

YEAR = {4: r'\d{4}', 2: r'\d{2}'}
MONTH = {True: r'(?:0[1-9]|1[0-2])', False: r'(?:[1-9]|1[0-2])'}
DAY = {True: r'(?:0[1-9]|[12]\d|3[01])', False: r'(?:[1-9]|[12]\d|3[01])'}
DATE_ORDERS = ('YMD', 'DMY', 'MDY')
DATE_SEPARATORS = ('-', '.', ' ')
CJK_DATE_MARKERS = (('年', '月', '日'), ('년', '월', '일'))
CJK_MONTH = r'(?:0?[1-9]|1[0-2])'
CJK_DAY = r'(?:0?[1-9]|[12]\d|3[01])'
TZ_OFFSET = r'[+-](?:[01]\d|2[0-3]):?[0-5]\d'


def build_date_formats() -> list[str]:
    """
    Expands the date format families into individual patterns.

    Returns:
        One pattern per combination of field order, year width, zero padding
        and separator, followed by the Chinese/Japanese and Korean forms.
    """
    formats = []
    for order, width, padded, sep in itertools.product(
            DATE_ORDERS, (4, 2), (True, False), DATE_SEPARATORS):
        parts = {'Y': YEAR[width], 'M': MONTH[padded], 'D': DAY[padded]}
        formats.append(re.escape(sep).join(parts[key] for key in order))
    for (year_mark, month_mark, day_mark), width in itertools.product(CJK_DATE_MARKERS, (4, 2)):
        formats.append(rf'{YEAR[width]}{year_mark} ?{CJK_MONTH}{month_mark} ?{CJK_DAY}{day_mark}')
    return formats


DATE_FORMATS = build_date_formats()
DATE = '|'.join(f'(?:{pattern})' for pattern in DATE_FORMATS)
DATETIME = rf'(?:{DATE})[T ]{TIME}(?:{TZ_OFFSET})?'


def _currency_symbols() -> str:
    """
    Collects every character of the Unicode 'Sc' (currency symbol) category.
    """
    return ''.join(chr(code) for code in range(sys.maxunicode + 1)
                   if unicodedata.category(chr(code)) == 'Sc')


CURRENCY_SYMBOLS = _currency_symbols()
CURRENCY = '[' + re.escape(CURRENCY_SYMBOLS) + rf'](?:{NUMBER_GROUPED}|{NUMBER_PLAIN})'


@dataclass(frozen=True)
class TypeTest:
    """
    One entry of the type registry.

    Attributes:
        tag: The data type reported on a match.
        pattern: The anchored regular expression source.
    """
    tag: DataType
    pattern: str
    compiled: re.Pattern = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'compiled', re.compile(self.pattern))

    def matches(self, cell: str) -> bool:
        return self.compiled.fullmatch(cell) is not None


class TypeRegistry:
    """
    An immutable, ordered list of type tests.

    Attributes:
        tests: The type tests in evaluation order.
    """
    def __init__(self, tests: list[TypeTest]):
        self.tests = tuple(tests)

    def detect(self, cell: str) -> DataType:
        """
        Returns the first matching type, or UNKNOWN.
        """
        if cell == '':
            return DataType.EMPTY
        for test in self.tests:
            if test.matches(cell):
                return test.tag
        return DataType.UNKNOWN

    def to_dict(self) -> dict:
        """
        Describes the registry for auditing.
        """
        return {
            'unicode_version': unicode_version(),
            'order': [test.tag.value for test in self.tests],
            'tests': [{'tag': test.tag.value, 'pattern': test.pattern} for test in self.tests],
            'date_formats': DATE_FORMATS,
            'date_format_count': len(DATE_FORMATS),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


DEFAULT_REGISTRY = TypeRegistry([
    TypeTest(DataType.EMPTY, r''),
    TypeTest(DataType.URL, URL),
    TypeTest(DataType.EMAIL, EMAIL),
    TypeTest(DataType.NUMBER_GROUPED, NUMBER_GROUPED),
    TypeTest(DataType.NUMBER_PLAIN, NUMBER_PLAIN),
    TypeTest(DataType.TIME, TIME),
    TypeTest(DataType.PERCENTAGE, PERCENTAGE),
    TypeTest(DataType.CURRENCY, CURRENCY),
    TypeTest(DataType.ALPHANUMERIC, ALPHANUMERIC),
    TypeTest(DataType.NA, NA),
    TypeTest(DataType.DATE, DATE),
    TypeTest(DataType.DATETIME, DATETIME),
])


@lru_cache(maxsize=65536)
def detect_type(cell: str) -> DataType:
    """
    Detects the data type of a cell with the default registry.

    Arguments:
        cell: The cell content, untrimmed.

    Returns:
        The first matching data type, or DataType.UNKNOWN.
    """
    return DEFAULT_REGISTRY.detect(cell)


def is_known_type(cell: str) -> bool:
    """
    Checks whether a cell matches any known data type.
    """
    return detect_type(cell) is not DataType.UNKNOWN


def dump_registry() -> dict:
    """
    Returns the default registry's patterns, order and date formats as JSON-ready data.
    """
    return DEFAULT_REGISTRY.to_dict()
