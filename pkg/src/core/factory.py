# -*- coding: utf-8 -*-
"""
Module Name: factory.py

Description:
The Factory module generates labeled corpora of synthetic CSV files. Each file
gets a dialect drawn from configurable pools, a table whose columns hold values
of the recognised data types, and optionally the kinds of mess found in real
files: comment lines, multi-line cells, nested quotes, ragged rows, empty cells
and quote characters used as ordinary text. Files are written together with a
label file, so the ground truth is known by construction.

Notes:
Generation is driven by a single seeded numpy Generator; the same seed and
settings always produce byte-identical corpora.

Author: elreysausage
Date: 2025-07-04
"""

import logging
import shutil
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from core.dialect import DEFAULT_POLICY, EMPTY, Dialect
from core.parser import NEWLINES, format_table
from core.tracker import LabeledRecord, Origin, write_labels

logger = logging.getLogger(__name__)

LABELS_FILENAME = 'labels.jsonl'
WORDS = (
    'alpha', 'river', 'stone', 'maple', 'orbit', 'cedar', 'delta', 'ember', 'fjord',
    'grove', 'harbor', 'island', 'jasper', 'kettle', 'lumen', 'meadow', 'north',
    'opal', 'prairie', 'quartz', 'ridge', 'summit', 'timber', 'umber', 'valley',
    'willow', 'yarrow', 'zephyr', 'Berlin', 'Lisbon', 'Oslo', 'Quito', 'Tokyo',
)
# None of these can act as an escape character.
JUNK_CHARS = '-#&*?!=+%$<>[]{}'
CURRENCY_SIGNS = ('$', '€', '£', '¥')
COMMENT_MARKERS = ('#', '%')
COLUMN_KINDS = (
    'integer', 'decimal', 'grouped', 'date', 'time', 'percentage', 'currency',
    'email', 'url', 'word', 'phrase', 'code', 'na',
)
MESS_FEATURES = ('comments', 'multiline', 'nested_quotes', 'ragged', 'empty_cells', 'unquoted_quotes')


@dataclass
class GeneratorSpec:
    """
    Settings of a synthetic corpus.

    Attributes:
        seed: Seed of the random generator.
        count: Number of files.
        delimiters: Delimiter pool.
        quotes: Quote character pool; '' means no quoting.
        escapes: Escape character pool, used with escape_probability.
        escape_probability: Probability that a file uses an escape character.
        comments: Probability that a file starts with comment lines.
        multiline: Probability that a file has cells with line breaks.
        nested_quotes: Probability that a file has cells containing the quote character.
        ragged: Probability that a file has rows of differing length.
        empty_cells: Probability that a file has empty cells.
        unquoted_quotes: Probability that a file uses quote-like characters as text.
        junk_fraction: Fraction of cells replaced by values of unknown type.
        single_column_rate: Probability that a file has a single column and no delimiter.
        min_rows, max_rows: Range of data rows per file.
        min_columns, max_columns: Range of columns per file.
    """
    seed: int = 0
    count: int = 100
    delimiters: tuple[str, ...] = (',', ';', '\t', '|', ':', '^', '#', '*', ' ')
    quotes: tuple[str, ...] = (EMPTY, '"', "'", '~')
    escapes: tuple[str, ...] = ('\\',)
    escape_probability: float = 0.2
    comments: float = 0.0
    multiline: float = 0.0
    nested_quotes: float = 0.0
    ragged: float = 0.0
    empty_cells: float = 0.0
    unquoted_quotes: float = 0.0
    junk_fraction: float = 0.02
    single_column_rate: float = 0.0
    min_rows: int = 5
    max_rows: int = 40
    min_columns: int = 3
    max_columns: int = 7

    def __post_init__(self):
        self.delimiters = tuple(self.delimiters)
        self.quotes = tuple(self.quotes)
        self.escapes = tuple(self.escapes)
        if self.count < 0:
            raise ValueError(f"count must not be negative, got {self.count}")
        if not self.delimiters or not self.quotes:
            raise ValueError("Delimiter and quote pools must not be empty")
        if EMPTY in self.delimiters or EMPTY in self.escapes:
            raise ValueError("Use single_column_rate and escape_probability instead of '' in the pools")
        if set(self.delimiters) & set(self.quotes):
            raise ValueError("Delimiter and quote pools must be disjoint")
        if set(self.escapes) & (set(self.delimiters) | set(self.quotes)):
            raise ValueError("Escape pool must be disjoint from the delimiter and quote pools")
        for name in ('escape_probability', *MESS_FEATURES, 'junk_fraction', 'single_column_rate'):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be a probability, got {value}")
        if self.escape_probability > 0 and not self.escapes:
            raise ValueError("escape_probability is set but the escape pool is empty")
        if not 1 <= self.min_rows <= self.max_rows:
            raise ValueError(f"Invalid row range {self.min_rows}..{self.max_rows}")
        if not 2 <= self.min_columns <= self.max_columns:
            raise ValueError(f"Invalid column range {self.min_columns}..{self.max_columns}")

    @property
    def mess_free(self) -> bool:
        return all(getattr(self, name) == 0 for name in MESS_FEATURES)

    def to_dict(self) -> dict:
        return {spec_field.name: getattr(self, spec_field.name) for spec_field in fields(self)}


@dataclass
class GeneratedFile:
    """
    One synthetic file before it is written.

    Attributes:
        text: The file content.
        dialect: The dialect the file was written with.
        rows: The table the file encodes.
        features: Mess features applied to the file.
    """
    text: str
    dialect: Dialect
    rows: list[list[str]]
    features: list[str] = field(default_factory=list)


def representable(cell: str, dialect: Dialect) -> bool:
    """
    Checks whether a cell can be written under a dialect.
    """
    if dialect.quotechar:
        return True
    if any(char in cell for char in NEWLINES):
        return False
    return not (dialect.delimiter and dialect.delimiter in cell and not dialect.escapechar)


class CorpusFactory:
    """
    Builds synthetic files from a GeneratorSpec.

    Attributes:
        MAX_ATTEMPTS: Attempts at drawing a representable value before falling back to a word.
    """
    MAX_ATTEMPTS: int = 20

    def __init__(self, spec: GeneratorSpec):
        """
        Initializes the CorpusFactory class.

        Parameters:
            spec: The corpus settings.
        """
        self.spec = spec
        self.rng = np.random.default_rng(spec.seed)

    def pick(self, options):
        return options[int(self.rng.integers(len(options)))]

    def chance(self, probability: float) -> bool:
        return bool(self.rng.random() < probability)

    def sample_dialect(self, single_column: bool) -> Dialect:
        """
        Draws the dialect of one file.
        """
        delimiter = EMPTY if single_column else self.pick(self.spec.delimiters)
        quote = self.pick(self.spec.quotes)
        escape = self.pick(self.spec.escapes) if self.chance(self.spec.escape_probability) else EMPTY
        return Dialect(delimiter, quote, escape)

    def sample_value(self, kind: str) -> str:
        """
        Draws one value of a column kind.
        """
        rng = self.rng
        if kind == 'integer':
            return str(int(rng.integers(-500, 100000)))
        if kind == 'decimal':
            return f"{rng.uniform(-1000, 1000):.{int(rng.integers(1, 4))}f}"
        if kind == 'grouped':
            return f"{int(rng.integers(1000, 10_000_000)):,}"
        if kind == 'date':
            year, month, day = int(rng.integers(1990, 2030)), int(rng.integers(1, 13)), int(rng.integers(1, 29))
            return self.pick((f"{year:04d}-{month:02d}-{day:02d}", f"{day:02d}.{month:02d}.{year:04d}"))
        if kind == 'time':
            return f"{int(rng.integers(0, 24)):02d}:{int(rng.integers(0, 60)):02d}"
        if kind == 'percentage':
            return f"{rng.uniform(0, 100):.1f}%"
        if kind == 'currency':
            return f"{self.pick(CURRENCY_SIGNS)}{rng.uniform(0, 5000):.2f}"
        if kind == 'email':
            return f"{self.pick(WORDS).lower()}.{self.pick(WORDS).lower()}@example.com"
        if kind == 'url':
            return f"https://www.{self.pick(WORDS).lower()}.org/{self.pick(WORDS).lower()}"
        if kind == 'word':
            return self.pick(WORDS)
        if kind == 'phrase':
            return ' '.join(self.pick(WORDS) for _ in range(int(rng.integers(2, 4))))
        if kind == 'code':
            return f"{self.pick(WORDS)[:2].upper()}{int(rng.integers(1, 99))}"
        if kind == 'na':
            return self.pick(('n/a', 'N/A', str(int(rng.integers(0, 10)))))
        raise ValueError(f"Invalid column kind {kind!r} - choose from {', '.join(COLUMN_KINDS)}")

    def sample_junk(self) -> str:
        """
        Draws a value of unknown type.
        """
        length = int(self.rng.integers(2, 6))
        return ''.join(self.pick(JUNK_CHARS) for _ in range(length))

    def sample_cell(self, kind: str, dialect: Dialect) -> str:
        for _ in range(self.MAX_ATTEMPTS):
            if self.chance(self.spec.junk_fraction):
                cell = self.sample_junk()
            else:
                cell = self.sample_value(kind)
            if representable(cell, dialect):
                return cell
        return self.pick(WORDS)

    def sample_table(self, dialect: Dialect, n_columns: int) -> list[list[str]]:
        """
        Draws a rectangular table, with a header row half of the time and
        always when a column holds URLs.
        """
        spec = self.spec
        n_rows = int(self.rng.integers(spec.min_rows, spec.max_rows + 1))
        kinds = [self.pick(COLUMN_KINDS) for _ in range(n_columns)]
        rows = [[self.sample_cell(kind, dialect) for kind in kinds] for _ in range(n_rows)]
        # a leading URL cell absorbs the rest of its line during URL filtering
        if 'url' in kinds or self.chance(0.5):
            header = [f"{self.pick(WORDS)}{column}" for column in range(n_columns)]
            rows.insert(0, header)
        return rows

    def replace_cell(self, rows: list[list[str]], dialect: Dialect, make) -> None:
        """
        Rewrites one random cell, unless the result cannot be written under the dialect.
        """
        r = int(self.rng.integers(len(rows)))
        c = int(self.rng.integers(len(rows[r])))
        cell = make(rows[r][c])
        if representable(cell, dialect):
            rows[r][c] = cell

    def apply_mess(self, rows: list[list[str]], dialect: Dialect) -> list[str]:
        """
        Applies the mess features drawn for one file.

        Returns:
            The names of the features that were applied.
        """
        spec = self.spec
        applied = []
        quote = dialect.quotechar
        if quote and self.chance(spec.multiline):
            for _ in range(int(self.rng.integers(1, 3))):
                self.replace_cell(rows, dialect, lambda cell: f"{cell}\n{self.pick(WORDS)}")
            applied.append('multiline')
        if quote and self.chance(spec.nested_quotes):
            for _ in range(int(self.rng.integers(1, 3))):
                self.replace_cell(rows, dialect, lambda cell: f"{self.pick(WORDS)} {quote}{cell}{quote}")
            applied.append('nested_quotes')
        if self.chance(spec.unquoted_quotes):
            others = sorted(set(DEFAULT_POLICY.allowed_quotes) - {quote})
            mark = self.pick(others)
            for _ in range(int(self.rng.integers(1, 3))):
                self.replace_cell(rows, dialect, lambda cell: f"{self.pick(WORDS)}{mark}s {cell}")
            applied.append('unquoted_quotes')
        if self.chance(spec.empty_cells):
            for _ in range(int(self.rng.integers(1, max(2, len(rows) // 3)))):
                self.replace_cell(rows, dialect, lambda cell: EMPTY)
            applied.append('empty_cells')
        if dialect.delimiter and self.chance(spec.ragged):
            for _ in range(int(self.rng.integers(1, max(2, len(rows) // 4)))):
                r = int(self.rng.integers(len(rows)))
                if len(rows[r]) > 1 and self.chance(0.5):
                    rows[r].pop()
                else:
                    rows[r].append(self.pick(WORDS))
            applied.append('ragged')
        if self.chance(spec.comments):
            marker = COMMENT_MARKERS[1] if dialect.delimiter == COMMENT_MARKERS[0] else COMMENT_MARKERS[0]
            comments = [[f"{marker} {self.pick(WORDS)} {self.pick(WORDS)}"]
                        for _ in range(int(self.rng.integers(1, 4)))]
            comments = [row for row in comments if representable(row[0], dialect)]
            rows[:0] = comments
            applied.append('comments')
        return applied

    def ensure_identifiable(self, rows: list[list[str]], dialect: Dialect) -> bool:
        """
        Makes sure the escape character is used at least once.

        Returns:
            Whether embedded quotes should be escaped rather than doubled.
        """
        if not dialect.escapechar:
            return False
        target = dialect.quotechar or dialect.delimiter
        if target and not any(target in cell for row in rows for cell in row):
            self.replace_cell(rows, dialect, lambda cell: f"{self.pick(WORDS)}{target}{self.pick(WORDS)}")
        return bool(dialect.quotechar)

    def build_file(self) -> GeneratedFile:
        """
        Generates one file with its dialect.
        """
        spec = self.spec
        single_column = self.chance(spec.single_column_rate)
        dialect = self.sample_dialect(single_column)
        if not dialect.delimiter and not dialect.quotechar:
            dialect = dialect.replace(escapechar=EMPTY)
        n_columns = 1 if single_column else int(self.rng.integers(spec.min_columns, spec.max_columns + 1))
        rows = self.sample_table(dialect, n_columns)
        features = self.apply_mess(rows, dialect)
        escape_quotes = self.ensure_identifiable(rows, dialect)
        needs_quoting = any(
            (dialect.delimiter and dialect.delimiter in cell) or dialect.quotechar in cell
            or any(char in cell for char in NEWLINES)
            for row in rows for cell in row) if dialect.quotechar else False
        quote_all = bool(dialect.quotechar) and (not needs_quoting or self.chance(0.3))
        lineterminator = self.pick(('\n', '\r\n'))
        trailing_newline = self.chance(0.8)
        text = format_table(rows, dialect, lineterminator=lineterminator,
                            trailing_newline=trailing_newline, quote_all=quote_all,
                            escape_quotes=escape_quotes)
        return GeneratedFile(text, dialect, rows, features)

    def generate(self, out_dir: str | Path) -> list[LabeledRecord]:
        """
        Writes the corpus and its label file.

        Arguments:
            out_dir: The output directory, created if missing.

        Returns:
            The labeled records in file order.

        Raises:
            RuntimeError: If writing fails; files written so far are removed.
        """
        out_dir = Path(out_dir)
        created_dir = not out_dir.exists()
        written: list[Path] = []
        records = []
        try:
            out_dir.mkdir(parents=True, exist_ok=True)
            for index in range(self.spec.count):
                generated = self.build_file()
                path = out_dir / f"file_{index:05d}.csv"
                path.write_bytes(generated.text.encode('utf-8'))
                written.append(path)
                records.append(LabeledRecord(path, generated.dialect, Origin.SYNTHETIC))
                logger.debug("Wrote %s with dialect %s and features %s",
                             path.name, generated.dialect, generated.features)
            labels_path = out_dir / LABELS_FILENAME
            write_labels(records, labels_path)
            written.append(labels_path)
        except OSError as e:
            for path in written:
                path.unlink(missing_ok=True)
            if created_dir:
                shutil.rmtree(out_dir, ignore_errors=True)
            raise RuntimeError(f"Corpus generation in {out_dir} failed...") from e
        logger.info("Generated %d files in %s", len(records), out_dir)
        return records


def generate(spec: GeneratorSpec, out_dir: str | Path) -> list[LabeledRecord]:
    """
    Generates a labeled synthetic corpus.

    Arguments:
        spec: The corpus settings.
        out_dir: The output directory.

    Returns:
        The labeled records, also written to labels.jsonl in out_dir.
    """
    return CorpusFactory(spec).generate(out_dir)
