# -*- coding: utf-8 -*-
"""
Module Name: tracker.py

Description:
The Tracker module evaluates a dialect detector against a labeled corpus. It
reads and writes label files, runs detection per file (optionally in a process
pool), compares every dialect component against the ground truth and
aggregates the results into an accuracy report split by standard/messy files
and by label origin. It also derives ground truth automatically for files that
pass a set of strict structural tests.

Notes:
A file that fails detection (unbroken tie, empty input, unreadable) counts as
incorrect on every component.

Author: elreysausage
Date: 2025-06-30
"""

import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np
import pandas as pd

from core.detector import DetectionStatus, DetectorVariant, detect
from core.dialect import DEFAULT_POLICY, EMPTY, CharacterPolicy, Dialect, get_dialects
from core.parser import NEWLINES, scan
from core.scoring import DEFAULT_CONSTANTS, ScoreConstants
from core.utils import printable_char, read_text, unicode_version

logger = logging.getLogger(__name__)

COMPONENTS = ('delimiter', 'quotechar', 'escapechar')
ERROR_STATUS = 'Error'


class Origin(Enum):
    HUMAN = 'human'
    AUTOMATIC = 'automatic'
    SYNTHETIC = 'synthetic'


@dataclass(frozen=True)
class LabeledRecord:
    """
    A corpus file with its ground-truth dialect.

    Attributes:
        path: The file path.
        dialect: The ground-truth dialect.
        origin: How the label was obtained.
    """
    path: Path
    dialect: Dialect
    origin: Origin = Origin.SYNTHETIC

    @property
    def standard(self) -> bool:
        """
        True for comma-delimited files with a double quote or no quote and no escape.
        """
        return (self.dialect.delimiter == ','
                and self.dialect.quotechar in (EMPTY, '"')
                and self.dialect.escapechar == EMPTY)

    def to_label(self, base: Path | None = None) -> dict:
        """
        Serializes the record as one label-file entry.

        Arguments:
            base: Directory the filename is written relative to.
        """
        filename = Path(self.path).relative_to(base) if base else Path(self.path)
        return {'filename': filename.as_posix(), **self.dialect.to_dict(), 'origin': self.origin.value}


def write_labels(records: list[LabeledRecord], labels_path: str | Path) -> None:
    """
    Writes a label file with one JSON object per line.

    Arguments:
        records: The labeled records.
        labels_path: The label file; filenames are written relative to its directory.
    """
    labels_path = Path(labels_path)
    lines = [json.dumps(record.to_label(labels_path.parent), ensure_ascii=False, sort_keys=True)
             for record in records]
    labels_path.write_text(''.join(line + '\n' for line in lines), encoding='utf-8')


def load_labels(labels_path: str | Path, corpus_dir: str | Path | None = None) -> list[LabeledRecord]:
    """
    Reads a label file.

    Arguments:
        labels_path: The label file with one JSON object per line.
        corpus_dir: Directory the filenames are relative to. Defaults to the
            label file's directory.

    Returns:
        The labeled records in file order.

    Raises:
        ValueError: If a line is not valid JSON or misses the filename.
    """
    labels_path = Path(labels_path)
    base = Path(corpus_dir) if corpus_dir is not None else labels_path.parent
    records = []
    for number, line in enumerate(labels_path.read_text(encoding='utf-8').splitlines(), start=1):
        if not line.strip():
            continue
        try:
            entry = json.loads(line)
            filename = entry['filename']
            origin = Origin(entry.get('origin', Origin.HUMAN.value))
        except (json.JSONDecodeError, KeyError, ValueError) as e:
            raise ValueError(f"Invalid label on line {number} of {labels_path}: {e}") from e
        records.append(LabeledRecord(base / filename, Dialect.from_dict(entry), origin))
    return records


def _detect_file(task: tuple) -> dict:
    """
    Detects the dialect of one corpus file and compares it with the label.
    """
    record, variant, consts, policy, encoding, latin1_fallback = task
    result = {
        'filename': Path(record.path).name,
        'origin': record.origin.value,
        'standard': record.standard,
        'expected': record.dialect.to_dict(),
        'size': 0,
    }
    start = time.perf_counter()
    try:
        text = read_text(record.path, encoding, latin1_fallback)
    except (OSError, ValueError) as e:
        logger.warning("Cannot read %s: %s", record.path, e)
        result.update({'status': ERROR_STATUS, 'detected': None, 'runtime_ms': 0.0})
        return result
    outcome = detect(text, variant, consts, policy)
    result.update({
        'size': len(text),
        'status': outcome.status.value,
        'detected': outcome.dialect.to_dict() if outcome.dialect else None,
        'runtime_ms': (time.perf_counter() - start) * 1000.0,
    })
    return result


def _accuracy_row(frame: pd.DataFrame) -> dict:
    count = len(frame)
    if count == 0:
        return {'files': 0, **{name: None for name in (*COMPONENTS, 'overall', 'failure_rate')}}
    row = {'files': count}
    for name in (*COMPONENTS, 'overall'):
        row[name] = 100.0 * int(frame[f'correct_{name}'].sum()) / count
    row['failure_rate'] = 100.0 * int(frame['failed'].sum()) / count
    return row


def runtime_exponent(sizes, runtimes) -> float | None:
    """
    Fits runtime = c * size^k on a log-log scale.

    Arguments:
        sizes: File sizes in characters.
        runtimes: Detection runtimes.

    Returns:
        The fitted exponent k, or None with fewer than two distinct positive sizes.
    """
    sizes = np.asarray(sizes, dtype=float)
    runtimes = np.asarray(runtimes, dtype=float)
    mask = (sizes > 0) & (runtimes > 0)
    if len(np.unique(sizes[mask])) < 2:
        return None
    slope, _ = np.polyfit(np.log(sizes[mask]), np.log(runtimes[mask]), deg=1)
    return float(slope)


@dataclass
class AccuracyReport:
    """
    Accuracy of a detector variant on a labeled corpus.

    Attributes:
        variant: The evaluated variant name.
        files: One row per file with expected/detected components, status,
            correctness flags, size and runtime.
        splits: Split name to per-component accuracy, overall accuracy and
            failure rate, all in percent.
    """
    variant: str
    files: pd.DataFrame
    splits: dict[str, dict] = field(default_factory=dict)

    SPLITS = ('all', 'standard', 'messy', *(origin.value for origin in Origin))

    @classmethod
    def from_results(cls, variant: str, results: list[dict]) -> 'AccuracyReport':
        """
        Aggregates per-file detection results.
        """
        rows = []
        for result in results:
            detected = result['detected'] or {}
            failed = result['status'] != DetectionStatus.DETECTED.value
            row = {
                'filename': result['filename'],
                'origin': result['origin'],
                'standard': result['standard'],
                'status': result['status'],
                'failed': failed,
                'size': result['size'],
                'runtime_ms': result['runtime_ms'],
            }
            for name in COMPONENTS:
                row[f'expected_{name}'] = result['expected'][name]
                row[f'detected_{name}'] = detected.get(name)
                row[f'correct_{name}'] = not failed and detected.get(name) == result['expected'][name]
            row['correct_overall'] = all(row[f'correct_{name}'] for name in COMPONENTS)
            rows.append(row)
        files = pd.DataFrame(rows, columns=[
            'filename', 'origin', 'standard', 'status', 'failed', 'size', 'runtime_ms',
            *(f'{kind}_{name}' for name in COMPONENTS for kind in ('expected', 'detected', 'correct')),
            'correct_overall'])
        selections = {
            'all': files,
            'standard': files[files['standard'].astype(bool)],
            'messy': files[~files['standard'].astype(bool)],
        }
        for origin in Origin:
            selections[origin.value] = files[files['origin'] == origin.value]
        splits = {name: _accuracy_row(selections[name]) for name in cls.SPLITS}
        return cls(variant, files, splits)

    @property
    def overall(self) -> float | None:
        return self.splits['all']['overall']

    @property
    def failures(self) -> int:
        return int(self.files['failed'].sum())

    @property
    def runtime_exponent(self) -> float | None:
        return runtime_exponent(self.files['size'], self.files['runtime_ms'])

    def to_dict(self, include_runtimes: bool = True) -> dict:
        """
        Serializes the report.

        Arguments:
            include_runtimes: Include per-file runtimes and the fitted runtime
                exponent. Without them repeated runs serialize identically.
        """
        columns = [column for column in self.files.columns
                   if include_runtimes or column != 'runtime_ms']
        result = {
            'variant': self.variant,
            'unicode_version': unicode_version(),
            'files_total': len(self.files),
            'failures': self.failures,
            'splits': self.splits,
            'files': self.files[columns].to_dict(orient='records'),
        }
        if include_runtimes:
            runtimes = self.files['runtime_ms']
            result['runtime_ms_mean'] = float(runtimes.mean()) if len(runtimes) else None
            result['runtime_exponent'] = self.runtime_exponent
        return result

    def to_text(self) -> str:
        """
        Renders the split table with one row per split and one column per component.
        """
        header = f"{'split':<10}{'files':>7}{'delim':>9}{'quote':>9}{'escape':>9}{'overall':>9}{'failed':>9}"
        lines = [f"Variant: {self.variant}", header, '-' * len(header)]
        for name, row in self.splits.items():
            if not row['files']:
                continue
            values = ''.join(f"{row[key]:>9.2f}" for key in (*COMPONENTS, 'overall', 'failure_rate'))
            lines.append(f"{name:<10}{row['files']:>7}{values}")
        return '\n'.join(lines)


def evaluate(
        corpus: list[LabeledRecord],
        variant: DetectorVariant = DetectorVariant.FULL,
        consts: ScoreConstants = DEFAULT_CONSTANTS,
        policy: CharacterPolicy = DEFAULT_POLICY,
        workers: int = 1,
        encoding: str = 'utf-8',
        latin1_fallback: bool = False
) -> AccuracyReport:
    """
    Runs detection on every corpus file and aggregates the accuracy.

    Arguments:
        corpus: The labeled files.
        variant: The detector variant to evaluate.
        consts: The scoring constants.
        policy: The character policy.
        workers: Number of worker processes; 1 runs in-process.
        encoding: The declared encoding of the corpus files.
        latin1_fallback: Retry undecodable files as latin-1.

    Returns:
        AccuracyReport: The report, with files in corpus order.
    """
    tasks = [(record, variant, consts, policy, encoding, latin1_fallback) for record in corpus]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_detect_file, tasks, chunksize=8))
    else:
        results = [_detect_file(task) for task in tasks]
    report = AccuracyReport.from_results(variant.value, results)
    logger.info("Evaluated %d files with variant %s: overall %s%%",
                len(corpus), variant.value, report.overall)
    return report


def plot_report(report: AccuracyReport, path: str | Path) -> None:
    """
    Saves a chart of runtime against file size and failure rate per split.

    Arguments:
        report: The accuracy report.
        path: The image file to write.
    """
    import matplotlib
    matplotlib.use('Agg')
    import matplotlib.pyplot as plt

    fig, (ax_runtime, ax_failure) = plt.subplots(1, 2, figsize=(12, 5))
    files = report.files[report.files['size'] > 0]
    ax_runtime.scatter(files['size'], files['runtime_ms'], s=8)
    ax_runtime.set_xscale('log')
    ax_runtime.set_yscale('log')
    ax_runtime.set_xlabel('File size (characters)')
    ax_runtime.set_ylabel('Runtime (ms)')
    exponent = report.runtime_exponent
    title = 'Runtime' if exponent is None else f'Runtime (exponent {exponent:.2f})'
    ax_runtime.set_title(title)

    splits = {name: row['failure_rate'] for name, row in report.splits.items() if row['files']}
    ax_failure.bar(list(splits), list(splits.values()))
    ax_failure.set_ylabel('Failure rate (%)')
    ax_failure.set_title(f'Failures ({report.variant})')
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


@dataclass(frozen=True)
class StrictTests:
    """
    Structural tests a parse must pass for its dialect to be accepted as
    automatic ground truth. Each check can be switched off.
    """
    constant_width: bool = True
    no_empty: bool = True
    no_nested_quotes: bool = True
    no_multiline: bool = True
    min_rows: int = 2
    min_columns: int = 2

    def passes(self, text: str, dialect: Dialect, policy: CharacterPolicy = DEFAULT_POLICY) -> bool:
        """
        Checks a file's parse under a dialect against every enabled test.
        """
        table, patterns = scan(text, dialect, policy.allowed_quotes)
        if table.warnings and self.no_nested_quotes:
            return False
        widths = {len(row) for row in table.rows}
        if table.n_rows < self.min_rows or min(widths, default=0) < self.min_columns:
            return False
        if self.constant_width and len(widths) > 1:
            return False
        cells = list(table.cells())
        if self.no_empty and any(cell == '' for cell in cells):
            return False
        if self.no_multiline and any(char in cell for cell in cells for char in NEWLINES):
            return False
        if self.no_nested_quotes:
            if any('Q' in pattern for pattern in patterns.patterns):
                return False
            if dialect.quotechar and any(dialect.quotechar in cell for cell in cells):
                return False
        return True


def auto_ground_truth(
        text: str,
        tests: StrictTests = StrictTests(),
        policy: CharacterPolicy = DEFAULT_POLICY
) -> Dialect | None:
    """
    Derives the dialect of a file from strict structural tests.

    Arguments:
        text: The decoded file content.
        tests: The strict tests to apply.
        policy: The character policy for candidate construction.

    Returns:
        The only candidate dialect whose parse passes every enabled test, or
        None when no candidate or several candidates pass.
    """
    if not text:
        return None
    passing = [dialect for dialect in get_dialects(text, policy) if tests.passes(text, dialect, policy)]
    if len(passing) != 1:
        logger.debug("No unique strict dialect: %d candidates pass (%s)", len(passing),
                     ', '.join('/'.join(printable_char(char) for char in dialect.to_dict().values())
                               for dialect in passing))
        return None
    return passing[0]
