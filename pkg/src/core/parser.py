# -*- coding: utf-8 -*-
"""
Module Name: parser.py

Description:
The Parser module converts raw text into a table of string cells under a given
dialect, formats tables back into text, and abstracts each parsed row into a
row pattern over the alphabet C (cell content), D (delimiter) and Q (a stray
quote character that was not consumed by quoting).

Notes:
Parsing semantics differ from the standard library reader in three ways:
    - The escape character is only interpreted before the delimiter, the quote
      character or itself; anywhere else it is kept as a literal character.
    - Quotes are only stripped when they surround the entire cell.
    - Inside a quoted cell a doubled quote is detected by looking ahead and
      yields a single literal quote, so no doublequote flag is needed.
Records end at LF, CRLF or a lone CR outside quoted sections, and a final line
terminator does not start an empty last row.

Author: elreysausage
Date: 2025-06-09
"""

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

from core.dialect import DEFAULT_POLICY, Dialect

logger = logging.getLogger(__name__)

NEWLINES = '\r\n'
NEWLINE_RE = re.compile('[\r\n]')
DEFAULT_STRAY_QUOTES = DEFAULT_POLICY.allowed_quotes


class UnrepresentableTableError(ValueError):
    """
    Raised when a table cannot be written under a dialect.

    Attributes:
        row: Index of the offending row.
        column: Index of the offending cell, or None for row-level problems.
    """
    def __init__(self, message: str, row: int, column: int | None = None):
        self.row = row
        self.column = column
        location = f"row {row}" if column is None else f"row {row}, column {column}"
        super().__init__(f"{message} ({location})")


@dataclass
class CellTable:
    """
    The parse result: ordered rows of string cells, possibly ragged.

    Attributes:
        rows: The parsed rows.
        warnings: Parser diagnostics (unterminated quote, bare CR). Not part of equality.
    """
    rows: list[list[str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list, compare=False)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cells(self) -> int:
        return sum(len(row) for row in self.rows)

    @property
    def max_width(self) -> int:
        return max((len(row) for row in self.rows), default=0)

    def cells(self):
        """
        Iterates over every cell in row-major order.
        """
        for row in self.rows:
            yield from row


@dataclass
class RowPatternTable:
    """
    The multiset of row patterns of a parsed file.

    Attributes:
        patterns: Pattern string to number of rows with that pattern.
    """
    patterns: dict[str, int] = field(default_factory=dict)

    @classmethod
    def from_rows(cls, row_patterns: list[str]) -> 'RowPatternTable':
        return cls(dict(Counter(row_patterns)))

    @property
    def lengths(self) -> dict[str, int]:
        """
        Row length per pattern: one more than its number of delimiters.
        """
        return {pattern: pattern.count('D') + 1 for pattern in self.patterns}

    @property
    def n_rows(self) -> int:
        return sum(self.patterns.values())

    @property
    def n_distinct(self) -> int:
        return len(self.patterns)


def _char_class(chars, group: bool = False) -> re.Pattern:
    source = '[' + ''.join(re.escape(char) for char in sorted(chars)) + ']'
    return re.compile(f'({source})' if group else source)


@lru_cache(maxsize=1024)
def _special_chars(
        dialect: Dialect,
        stray_quotes: frozenset
) -> tuple[re.Pattern, re.Pattern | None, re.Pattern | None]:
    """
    Compiles the character classes that interrupt plain cell content.

    Returns:
        A pattern for unquoted content, one for quoted content (None if the
        dialect has no quote character) and a capturing pattern for stray
        quote characters (None if there are none).
    """
    specials = set(NEWLINES) | set(stray_quotes)
    specials |= {char for char in (dialect.delimiter, dialect.quotechar, dialect.escapechar) if char}
    quoted = None
    if dialect.quotechar:
        quoted = _char_class({char for char in (dialect.quotechar, dialect.escapechar) if char})
    stray = _char_class(stray_quotes, group=True) if stray_quotes else None
    return _char_class(specials), quoted, stray


def _line_pattern(line: str, cells: list[str], stray_re: re.Pattern | None) -> str:
    """
    Builds the row pattern of a record split without quote or escape handling.
    """
    if stray_re is None or not stray_re.search(line):
        return 'D'.join(['C'] * len(cells))
    patterns = []
    for cell in cells:
        # odd parts are the captured stray quotes, even parts the content between them
        marks = ''.join('Q' if k % 2 else 'C'
                        for k, part in enumerate(stray_re.split(cell)) if k % 2 or part)
        patterns.append(marks or 'C')
    return 'D'.join(patterns)


def scan(
        text: str,
        dialect: Dialect,
        stray_quotes: frozenset = DEFAULT_STRAY_QUOTES,
        split_lines: bool = True
) -> tuple[CellTable, RowPatternTable]:
    """
    Parses text under a dialect and abstracts every record into a row pattern.

    Arguments:
        text: The decoded file content.
        dialect: The dialect to parse with.
        stray_quotes: Quote-like characters reported as Q when they occur
            outside a quoted section without being consumed by quoting.
        split_lines: Split records that contain neither the quote nor the
            escape character with str.split instead of the character scanner.
            The result is the same either way.

    Returns:
        A tuple containing:
        - CellTable: The parsed rows with diagnostics.
        - RowPatternTable: The aggregated row patterns of the same parse.
    """
    delimiter, quote, escape = dialect.delimiter, dialect.quotechar, dialect.escapechar
    escapable = frozenset(char for char in (delimiter, quote, escape) if char)
    unquoted_re, quoted_re, stray_re = _special_chars(dialect, frozenset(stray_quotes))
    # a delimiter that ends lines cannot be handled by splitting lines first
    split_lines = split_lines and not (delimiter and delimiter in NEWLINES)

    rows: list[list[str]] = []
    row_patterns: list[str] = []
    warnings: list[str] = []
    bare_cr = 0
    first_bare_cr = -1
    i, n = 0, len(text)
    while i < n:
        line_end = -1
        if split_lines:
            match = NEWLINE_RE.search(text, i)
            line_end = match.start() if match else n
            line = text[i:line_end]
            if (quote and quote in line) or (escape and escape in line):
                line_end = -1
        if line_end >= 0:
            cells = line.split(delimiter) if delimiter else [line]
            pattern = [_line_pattern(line, cells, stray_re)]
            i = line_end
        else:
            cells = []
            pattern = []
            while True:
                buf: list[str] = []
                marks: list[str] = []
                if quote and i < n and text[i] == quote:
                    start = i
                    i += 1
                    closed = False
                    while i < n:
                        match = quoted_re.search(text, i)
                        if match is None:
                            buf.append(text[i:])
                            i = n
                            break
                        j = match.start()
                        if j > i:
                            buf.append(text[i:j])
                        if escape and text[j] == escape:
                            if j + 1 < n and text[j + 1] in escapable:
                                buf.append(text[j + 1])
                                i = j + 2
                            else:
                                buf.append(escape)
                                i = j + 1
                            continue
                        if j + 1 < n and text[j + 1] == quote:
                            buf.append(quote)
                            i = j + 2
                            continue
                        i = j + 1
                        closed = True
                        break
                    marks.append('C')
                    if not closed:
                        warnings.append(f"Unterminated quote opened at offset {start}")
                    elif i < n and text[i] != delimiter and text[i] not in NEWLINES:
                        # quotes do not surround the whole cell, so the section is kept verbatim
                        buf = [text[start:i]]

                while i < n:
                    match = unquoted_re.search(text, i)
                    j = match.start() if match else n
                    if j > i:
                        buf.append(text[i:j])
                        if not marks or marks[-1] != 'C':
                            marks.append('C')
                        i = j
                    if i >= n:
                        break
                    char = text[i]
                    if char == delimiter or char in NEWLINES:
                        break
                    if escape and char == escape:
                        if i + 1 < n and text[i + 1] in escapable:
                            buf.append(text[i + 1])
                            i += 2
                        else:
                            buf.append(escape)
                            i += 1
                        if not marks or marks[-1] != 'C':
                            marks.append('C')
                        continue
                    buf.append(char)
                    marks.append('Q')
                    i += 1

                cells.append(''.join(buf))
                pattern.extend(marks or ['C'])
                if i < n and delimiter and text[i] == delimiter:
                    pattern.append('D')
                    i += 1
                    continue
                break

        if i < n:
            if text[i] == '\r':
                if i + 1 < n and text[i + 1] == '\n':
                    i += 2
                else:
                    if not bare_cr:
                        first_bare_cr = i
                    bare_cr += 1
                    i += 1
            else:
                i += 1
        rows.append(cells)
        row_patterns.append(''.join(pattern))

    if bare_cr:
        warnings.append(f"{bare_cr} bare CR line terminator(s), first at offset {first_bare_cr}")
    return CellTable(rows, warnings), RowPatternTable.from_rows(row_patterns)


def parse(text: str, dialect: Dialect) -> CellTable:
    """
    Parses text into a table of cells under a dialect.

    Arguments:
        text: The decoded file content.
        dialect: The dialect to parse with.

    Returns:
        The parsed table. Malformed input never raises; problems are listed
        in the table's warnings.
    """
    return scan(text, dialect)[0]


def abstract_rows(text: str, dialect: Dialect) -> RowPatternTable:
    """
    Abstracts each record of the text into a row pattern and counts them.
    """
    return scan(text, dialect)[1]


def _format_cell(
        cell: str,
        dialect: Dialect,
        row: int,
        column: int,
        quote_all: bool,
        escape_quotes: bool
) -> str:
    delimiter, quote, escape = dialect.delimiter, dialect.quotechar, dialect.escapechar
    body = cell.replace(escape, escape * 2) if escape else cell
    has_newline = any(char in cell for char in NEWLINES)
    has_delimiter = bool(delimiter) and delimiter in cell
    if quote and (quote_all or has_newline or has_delimiter or quote in cell):
        quote_repl = escape + quote if (escape_quotes and escape) else quote * 2
        return quote + body.replace(quote, quote_repl) + quote
    if has_newline:
        raise UnrepresentableTableError(
            "Cell contains a line break but the dialect has no quote character", row, column)
    if has_delimiter:
        if not escape:
            raise UnrepresentableTableError(
                "Cell contains the delimiter but the dialect cannot quote or escape it", row, column)
        body = body.replace(delimiter, escape + delimiter)
    return body


def format_table(
        table: CellTable | list[list[str]],
        dialect: Dialect,
        lineterminator: str = '\n',
        trailing_newline: bool = False,
        quote_all: bool = False,
        escape_quotes: bool = False
) -> str:
    """
    Writes a table as text under a dialect, so that parsing the result under
    the same dialect returns the table.

    Arguments:
        table: The table or its list of rows.
        dialect: The dialect to write with.
        lineterminator: The record separator, '\\n' or '\\r\\n'.
        trailing_newline: Terminate the last record as well.
        quote_all: Quote every cell (requires a quote character).
        escape_quotes: Escape embedded quotes with the escape character instead
            of doubling them.

    Returns:
        The formatted text.

    Raises:
        UnrepresentableTableError: If a row is empty, a multi-cell row has no
            delimiter, or a cell needs protection the dialect cannot give.
    """
    if lineterminator not in ('\n', '\r\n'):
        raise ValueError("Invalid line terminator - choose from '\\n' or '\\r\\n'...")
    rows = table.rows if isinstance(table, CellTable) else table
    lines = []
    for r, row in enumerate(rows):
        if not row:
            raise UnrepresentableTableError("Row has no cells", r)
        if len(row) > 1 and not dialect.delimiter:
            raise UnrepresentableTableError("Row has several cells but the dialect has no delimiter", r)
        lines.append(dialect.delimiter.join(
            _format_cell(cell, dialect, r, c, quote_all, escape_quotes) for c, cell in enumerate(row)))
    text = lineterminator.join(lines)
    if lines and (trailing_newline or list(rows[-1]) == ['']):
        text += lineterminator
    return text
