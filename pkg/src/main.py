# -*- coding: utf-8 -*-
"""
Module Name: main.py

Description:
This is the main entry point for the application. It exposes dialect detection,
parsing, corpus evaluation, corpus generation and the type registry dump as
subcommands of the `dialectsniff` command.

Notes:
Results go to standard output as JSON lines (or CSV / an aligned table when
requested); diagnostics go to standard error through logging. Exit codes:
0 on success, 1 when detection fails (unbroken tie or empty input), 2 on
usage, I/O or decoding errors.

Author: elreysausage
Date: 2025-07-08
"""

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import pandas as pd

import core.utils as ut
from core.detector import DetectionStatus, DetectorVariant, detect
from core.dialect import DEFAULT_POLICY, CharacterPolicy, Dialect
from core.factory import LABELS_FILENAME, GeneratorSpec, generate
from core.parser import format_table, parse
from core.scoring import ScoreConstants
from core.tracker import evaluate, load_labels, plot_report
from core.typeinfer import dump_registry

logger = logging.getLogger('dialectsniff')

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2
NORMALIZED_DIALECT = Dialect(',', '"', '')
CHAR_ALIASES = {'\\t': '\t', 'tab': '\t', 'space': ' ', 'none': ''}
MESSY_RATE = 0.1


def decode_char(value: str) -> str:
    """
    Decodes a dialect character given on the command line ('\\t', 'tab', 'space', 'none').
    """
    return CHAR_ALIASES.get(value.lower() if len(value) > 1 else value, value)


def decode_chars(value: str) -> tuple[str, ...]:
    return tuple(dict.fromkeys(value.replace('\\t', '\t')))


def emit(record: dict) -> None:
    """
    Writes one JSON line to standard output.
    """
    sys.stdout.write(json.dumps(record, ensure_ascii=False) + '\n')


def emit_rows(rows: list[list[str]], output: str) -> None:
    """
    Writes rows as normalized CSV or as an aligned table.
    """
    if output == 'csv':
        sys.stdout.write(format_table(rows, NORMALIZED_DIALECT, trailing_newline=True))
    else:
        sys.stdout.write(pd.DataFrame(rows).fillna('').to_string(index=False, header=False) + '\n')


def resolve_policy(source: str | None) -> CharacterPolicy:
    """
    Loads the character policy from --policy, then DIALECTSNIFF_POLICY, else the default.
    """
    source = source or os.environ.get(ut.ENV_POLICY)
    if not source:
        return DEFAULT_POLICY
    return CharacterPolicy.from_json(source)


def build_config(args: argparse.Namespace) -> dict:
    """
    Validates the shared detection options before any file is read.

    Raises:
        ValueError: If a constant, variant or policy is invalid.
        EnvironmentError: If a configuration variable is invalid.
    """
    workers = args.workers if args.workers is not None else ut.get_env_int(ut.ENV_WORKERS, 1)
    if workers < 1:
        raise ValueError(f"--workers must be positive, got {workers}")
    if args.max_chars is not None and args.max_chars < 1:
        raise ValueError(f"--max-chars must be positive, got {args.max_chars}")
    try:
        policy = resolve_policy(args.policy)
    except (OSError, json.JSONDecodeError) as e:
        raise ValueError(f"Cannot load policy: {e}") from e
    return {
        'variant': DetectorVariant.from_name(args.variant),
        'consts': ScoreConstants(args.alpha, args.beta),
        'policy': policy,
        'workers': workers,
    }


def _detect_path(task: tuple) -> tuple[dict, int]:
    """
    Detects the dialect of one input file for the detect command.
    """
    path, config, encoding, latin1_fallback, verbose, timing, max_chars = task
    start = time.perf_counter()
    try:
        text = ut.read_text(path, encoding, latin1_fallback)
    except (OSError, ut.InputDecodeError) as e:
        logger.error("%s", e)
        return {'file': path, 'status': 'Error', 'error': str(e)}, EXIT_ERROR
    outcome = detect(text, config['variant'], config['consts'], config['policy'], max_chars=max_chars)
    record = {'file': path, **outcome.to_dict(verbose)}
    if timing:
        record['runtime_ms'] = round((time.perf_counter() - start) * 1000.0, 3)
    code = EXIT_OK if outcome.status is DetectionStatus.DETECTED else EXIT_FAILED
    return record, code


def cmd_detect(args: argparse.Namespace) -> int:
    """
    Detects the dialect of every input file.
    """
    config = build_config(args)
    tasks = [(path, config, args.encoding, args.latin1_fallback, args.verbose,
              not args.no_timing, args.max_chars) for path in args.files]
    if config['workers'] > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config['workers']) as executor:
            results = list(executor.map(_detect_path, tasks))
    else:
        results = [_detect_path(task) for task in tasks]

    if args.output == 'json':
        for record, _ in results:
            emit(record)
    else:
        rows = [['file', 'status', 'delimiter', 'quotechar', 'escapechar']]
        for record, _ in results:
            dialect = record.get('dialect') or {}
            chars = [dialect.get(name, '') for name in ('delimiter', 'quotechar', 'escapechar')]
            if args.output == 'table':
                chars = [ut.printable_char(char) for char in chars]
            rows.append([record['file'], record['status'], *chars])
        emit_rows(rows, args.output)
    return max((code for _, code in results), default=EXIT_OK)


def cmd_parse(args: argparse.Namespace) -> int:
    """
    Parses one file with the detected or the given dialect.
    """
    config = build_config(args)
    overrides = {name: decode_char(value) for name, value in
                 (('delimiter', args.delimiter), ('quotechar', args.quotechar), ('escapechar', args.escapechar))
                 if value is not None}
    dialect = Dialect.from_dict(overrides) if overrides else None
    try:
        text = ut.read_text(args.file, args.encoding, args.latin1_fallback)
    except (OSError, ut.InputDecodeError) as e:
        logger.error("%s", e)
        return EXIT_ERROR
    if not text:
        logger.error("%s is empty", args.file)
        return EXIT_FAILED
    if dialect is None:
        outcome = detect(text, config['variant'], config['consts'], config['policy'], max_chars=args.max_chars)
        if outcome.status is not DetectionStatus.DETECTED:
            logger.error("Cannot detect the dialect of %s: %s", args.file, outcome.status.value)
            return EXIT_FAILED
        dialect = outcome.dialect
    table = parse(text, dialect)
    for warning in table.warnings:
        logger.warning("%s: %s", args.file, warning)
    if args.output == 'json':
        emit({'file': args.file, 'dialect': dialect.to_dict(), 'rows': table.rows})
    else:
        emit_rows(table.rows, args.output)
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    """
    Evaluates a detector variant on a labeled corpus.
    """
    config = build_config(args)
    labels = Path(args.labels) if args.labels else Path(args.corpus) / LABELS_FILENAME
    try:
        corpus = load_labels(labels, args.corpus)
    except OSError as e:
        logger.error("Cannot read labels: %s", e)
        return EXIT_ERROR
    report = evaluate(corpus, config['variant'], config['consts'], config['policy'],
                      config['workers'], args.encoding, args.latin1_fallback)
    if args.plot:
        plot_report(report, args.plot)
    if args.output == 'table':
        sys.stdout.write(report.to_text() + '\n')
    else:
        sys.stdout.write(json.dumps(report.to_dict(include_runtimes=not args.no_timing),
                                    ensure_ascii=False) + '\n')
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    """
    Writes a synthetic labeled corpus.
    """
    mess = MESSY_RATE if args.messy else 0.0
    options = {
        'seed': args.seed,
        'count': args.count,
        'escape_probability': args.escape_probability,
        'junk_fraction': args.junk_fraction,
        'single_column_rate': args.single_column_rate,
    }
    for name in ('comments', 'multiline', 'nested_quotes', 'ragged', 'empty_cells', 'unquoted_quotes'):
        value = getattr(args, name)
        options[name] = mess if value is None else value
    if args.delimiters:
        options['delimiters'] = decode_chars(args.delimiters)
    if args.quotes is not None:
        options['quotes'] = ('', *decode_chars(args.quotes))
    spec = GeneratorSpec(**options)
    records = generate(spec, args.out)
    emit({'out': str(args.out), 'count': len(records), 'labels': str(Path(args.out) / LABELS_FILENAME)})
    return EXIT_OK


def cmd_dump_types(args: argparse.Namespace) -> int:
    """
    Prints the type registry.
    """
    sys.stdout.write(json.dumps(dump_registry(), ensure_ascii=False, indent=2) + '\n')
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    """
    Builds the command-line parser.
    """
    parser = argparse.ArgumentParser(
        prog='dialectsniff', description='Detect CSV dialects by data consistency.')
    parser.add_argument('--log-level', default=None,
                        help=f'Logging level (default: ${ut.ENV_LOG_LEVEL} or WARNING)')
    sub = parser.add_subparsers(dest='command', required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--variant', default=DetectorVariant.FULL.value,
                        choices=[variant.value for variant in DetectorVariant],
                        help='Scoring variant (default: full)')
    common.add_argument('--alpha', type=float, default=ScoreConstants.alpha,
                        help='Pattern score floor for single-cell rows (default: 1e-3)')
    common.add_argument('--beta', type=float, default=ScoreConstants.beta,
                        help='Lower bound of the type score (default: 1e-10)')
    common.add_argument('--policy', default=None,
                        help=f'Character policy JSON file or document (default: ${ut.ENV_POLICY})')
    common.add_argument('--encoding', default='utf-8', help='Declared input encoding (default: utf-8)')
    common.add_argument('--latin-1-fallback', dest='latin1_fallback', action='store_true',
                        help='Retry as latin-1 when decoding fails')
    common.add_argument('--workers', type=int, default=None,
                        help=f'Worker processes (default: ${ut.ENV_WORKERS} or 1)')
    common.add_argument('--max-chars', type=int, default=None,
                        help='Only use the first N characters for detection')
    common.add_argument('--no-timing', action='store_true',
                        help='Omit runtimes so repeated runs give identical output')

    s = sub.add_parser('detect', parents=[common], help='Detect the dialect of one or more files')
    s.add_argument('files', nargs='+', help='Input files')
    s.add_argument('--verbose', action='store_true', help='Include the scores of every candidate')
    s.add_argument('--output', choices=['json', 'csv', 'table'], default='json')
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser('parse', parents=[common], help='Parse a file into rows')
    s.add_argument('file', help='Input file')
    s.add_argument('--delimiter', default=None, help="Delimiter override ('\\t', 'space', 'none')")
    s.add_argument('--quotechar', default=None, help="Quote character override ('none' for no quoting)")
    s.add_argument('--escapechar', default=None, help="Escape character override ('none' for no escaping)")
    s.add_argument('--output', choices=['json', 'csv', 'table'], default='json')
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser('evaluate', parents=[common], help='Evaluate detection on a labeled corpus')
    s.add_argument('--corpus', required=True, help='Corpus directory')
    s.add_argument('--labels', default=None, help=f'Label file (default: CORPUS/{LABELS_FILENAME})')
    s.add_argument('--output', choices=['json', 'table'], default='json')
    s.add_argument('--plot', default=None, help='Save a runtime and failure chart to this path')
    s.set_defaults(func=cmd_evaluate)

    s = sub.add_parser('generate', help='Generate a synthetic labeled corpus')
    s.add_argument('--out', required=True, help='Output directory')
    s.add_argument('--seed', type=int, default=GeneratorSpec.seed)
    s.add_argument('--count', type=int, default=GeneratorSpec.count)
    s.add_argument('--delimiters', default=None, help="Delimiter pool as a string, e.g. ',;|\\t'")
    s.add_argument('--quotes', default=None, help="Quote pool as a string; no quoting is always included")
    s.add_argument('--escape-probability', type=float, default=GeneratorSpec.escape_probability)
    s.add_argument('--junk-fraction', type=float, default=GeneratorSpec.junk_fraction)
    s.add_argument('--single-column-rate', type=float, default=GeneratorSpec.single_column_rate)
    s.add_argument('--messy', action='store_true', help=f'Enable every mess feature at rate {MESSY_RATE}')
    for name in ('comments', 'multiline', 'nested-quotes', 'ragged', 'empty-cells', 'unquoted-quotes'):
        s.add_argument(f'--{name}', type=float, default=None, help=f'Rate of files with {name.replace("-", " ")}')
    s.set_defaults(func=cmd_generate)

    s = sub.add_parser('dump-types', help='Print the type registry as JSON')
    s.set_defaults(func=cmd_dump_types)
    return parser


def main(argv: list[str] | None = None) -> int:
    """
    Runs the command line.

    Arguments:
        argv: Command-line arguments without the program name.

    Returns:
        The process exit code.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        ut.configure_logging(args.log_level)
        return args.func(args)
    except (ValueError, EnvironmentError, RuntimeError) as e:
        logger.error("%s", e)
        return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
