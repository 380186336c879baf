# -*- coding: utf-8 -*-
"""
Module Name: test_main.py

Description:
This module contains the unit tests for the command line. Commands are run
through main() with standard output captured, and the exit codes and printed
results are checked.

Author: elreysausage
Date: 2025-07-09
"""

import io
import json
import logging
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from main import EXIT_ERROR, EXIT_FAILED, EXIT_OK, decode_char, decode_chars, main


class TestMain(unittest.TestCase):
    """
    Unit tests for the dialectsniff command line.

    Attributes:
        tmp: Temporary directory holding input files and corpora.
    """
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)
        root = logging.getLogger()
        self.saved_handlers, self.saved_level = list(root.handlers), root.level

    def tearDown(self):
        root = logging.getLogger()
        root.handlers[:] = self.saved_handlers
        root.setLevel(self.saved_level)
        self.tmp.cleanup()

    def write(self, name: str, content: str | bytes) -> str:
        path = self.dir / name
        path.write_bytes(content if isinstance(content, bytes) else content.encode('utf-8'))
        return str(path)

    def run_main(self, *argv: str) -> tuple[int, str]:
        """
        Runs main with the given arguments and returns the exit code and standard output.
        """
        with patch('sys.stdout', new_callable=io.StringIO) as stdout, \
                patch('sys.stderr', new_callable=io.StringIO):
            code = main(['--log-level', 'critical', *argv])
        return code, stdout.getvalue()

    def run_json(self, *argv: str) -> tuple[int, list[dict]]:
        code, out = self.run_main(*argv)
        return code, [json.loads(line) for line in out.splitlines()]

    def test_detect(self):
        """
        Tests detect on a semicolon file.

        Asserts:
            One JSON line with the semicolon dialect, a runtime and exit code 0.
        """
        code, records = self.run_json('detect', self.write('a.csv', 'a;b\n1;2'))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(records[0]['status'], 'Detected')
        self.assertEqual(records[0]['dialect'], {'delimiter': ';', 'quotechar': '', 'escapechar': ''})
        self.assertIn('runtime_ms', records[0])

    def test_detect_failures(self):
        """
        Asserts:
            An empty file exits 1; a directory or undecodable file exits 2.
        """
        code, records = self.run_json('detect', self.write('empty.csv', ''))
        self.assertEqual((code, records[0]['status']), (EXIT_FAILED, 'EmptyInput'))
        code, records = self.run_json('detect', str(self.dir))
        self.assertEqual((code, records[0]['status']), (EXIT_ERROR, 'Error'))
        code, records = self.run_json('detect', self.write('bad.csv', b'a;b\xff'))
        self.assertEqual(code, EXIT_ERROR)
        self.assertIn('offset 3', records[0]['error'])

    def test_detect_worst_code_wins(self):
        good = self.write('a.csv', 'a;b\n1;2')
        empty = self.write('empty.csv', '')
        code, records = self.run_json('detect', good, empty)
        self.assertEqual(code, EXIT_FAILED)
        self.assertEqual([record['status'] for record in records], ['Detected', 'EmptyInput'])

    def test_detect_latin1_fallback(self):
        code, records = self.run_json('detect', '--latin-1-fallback', self.write('l.csv', b'caf\xe9;1\nth\xe9;2'))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(records[0]['dialect']['delimiter'], ';')

    def test_detect_verbose_and_no_timing(self):
        """
        Asserts:
            --verbose adds the candidate scores; --no-timing makes repeated runs identical.
        """
        path = self.write('a.csv', 'a,b\n1,2\n3,4')
        code, records = self.run_json('detect', '--verbose', '--no-timing', path)
        self.assertNotIn('runtime_ms', records[0])
        self.assertIn('scores', records[0])
        self.assertEqual(self.run_main('detect', '--no-timing', path), self.run_main('detect', '--no-timing', path))

    def test_detect_parallel_matches_serial(self):
        paths = [self.write(f'{i}.csv', text) for i, text in enumerate(('a;b\n1;2', 'a,b\n1,2', 'x|y\n3|4'))]
        serial = self.run_main('detect', '--no-timing', *paths)
        parallel = self.run_main('detect', '--no-timing', '--workers', '2', *paths)
        self.assertEqual(serial, parallel)

    def test_detect_csv_output(self):
        code, out = self.run_main('detect', '--output', 'csv', self.write('a.csv', 'a;b\n1;2'))
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], 'file,status,delimiter,quotechar,escapechar')
        self.assertTrue(lines[1].endswith(',Detected,;,,'))

    def test_parse_to_normalized_csv(self):
        """
        Tests parsing a caret/tilde file into normalized CSV.

        Asserts:
            Cell contents are unchanged and written with comma and double quote.
        """
        path = self.write('caret.csv', 'a^b^c\n1^2^3\n~x^y~^z^w')
        code, out = self.run_main('parse', '--output', 'csv', path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, 'a,b,c\n1,2,3\nx^y,z,w\n')

    def test_parse_with_overrides(self):
        """
        Asserts:
            Explicit dialect characters are used instead of detection.
        """
        path = self.write('a.csv', 'a;b|c\n1;2|3')
        code, records = self.run_json('parse', '--delimiter', '|', path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(records[0]['rows'], [['a;b', 'c'], ['1;2', '3']])
        self.assertEqual(records[0]['dialect']['delimiter'], '|')

    def test_parse_failures(self):
        self.assertEqual(self.run_main('parse', self.write('empty.csv', ''))[0], EXIT_FAILED)
        self.assertEqual(self.run_main('parse', str(self.dir / 'missing.csv'))[0], EXIT_ERROR)

    def test_generate_and_evaluate(self):
        """
        Tests generating a corpus twice and evaluating it twice.

        Asserts:
            Both corpora are byte-identical and both reports print identically.
        """
        one, two = self.dir / 'one', self.dir / 'two'
        for out in (one, two):
            code, records = self.run_json('generate', '--seed', '7', '--count', '6', '--out', str(out))
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(records[0]['count'], 6)
        for path in sorted(one.iterdir()):
            self.assertEqual(path.read_bytes(), (two / path.name).read_bytes())

        first = self.run_main('evaluate', '--corpus', str(one), '--no-timing')
        second = self.run_main('evaluate', '--corpus', str(one), '--no-timing')
        self.assertEqual(first, second)
        self.assertEqual(first[0], EXIT_OK)
        report = json.loads(first[1])
        self.assertEqual(report['files_total'], 6)
        self.assertNotIn('runtime_exponent', report)

    def test_evaluate_table_and_plot(self):
        corpus = self.dir / 'corpus'
        self.run_main('generate', '--seed', '1', '--count', '4', '--messy', '--out', str(corpus))
        plot = self.dir / 'chart.png'
        code, out = self.run_main('evaluate', '--corpus', str(corpus), '--output', 'table', '--plot', str(plot))
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(out.startswith('Variant: full'))
        self.assertTrue(plot.exists())

    def test_evaluate_writes_only_the_report(self):
        """
        Asserts:
            Without logging, evaluate leaves the error stream empty and prints one JSON document.
        """
        corpus = self.dir / 'corpus'
        self.run_main('generate', '--seed', '2', '--count', '3', '--out', str(corpus))
        with patch('sys.stdout', new_callable=io.StringIO) as stdout, \
                patch('sys.stderr', new_callable=io.StringIO) as stderr:
            code = main(['--log-level', 'critical', 'evaluate', '--corpus', str(corpus)])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(stderr.getvalue(), '')
        self.assertEqual(len(stdout.getvalue().splitlines()), 1)
        self.assertEqual(json.loads(stdout.getvalue())['files_total'], 3)

    def test_evaluate_missing_labels(self):
        self.assertEqual(self.run_main('evaluate', '--corpus', str(self.dir))[0], EXIT_ERROR)

    def test_dump_types(self):
        code, out = self.run_main('dump-types')
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['date_format_count'], 40)

    def test_invalid_configuration(self):
        """
        Asserts:
            Invalid constants, policies and worker counts exit 2 before any file is read.
        """
        path = self.write('a.csv', 'a;b\n1;2')
        self.assertEqual(self.run_main('detect', '--alpha', '0', path)[0], EXIT_ERROR)
        self.assertEqual(self.run_main('detect', '--policy', '{"quotes": []}', path)[0], EXIT_ERROR)
        self.assertEqual(self.run_main('detect', '--workers', '0', path)[0], EXIT_ERROR)
        with patch.dict('os.environ', {'DIALECTSNIFF_WORKERS': 'many'}):
            self.assertEqual(self.run_main('detect', path)[0], EXIT_ERROR)
        with patch('sys.stderr', new_callable=io.StringIO), self.assertRaises(SystemExit):
            main(['detect', '--variant', 'best', path])

    def test_policy_restricts_quotes(self):
        path = self.write('a.csv', "a,'b,c'\n1,'2,3'")
        code, records = self.run_json('detect', '--policy', '{"allowed_quotes": ["\\""]}', path)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(records[0]['dialect']['quotechar'], '')

    def test_decode_char(self):
        self.assertEqual([decode_char(value) for value in ('\\t', 'tab', 'space', 'none', ';')],
                         ['\t', '\t', ' ', '', ';'])
        self.assertEqual(decode_chars(',;\\t,'), (',', ';', '\t'))


if __name__ == '__main__':
    unittest.main()
