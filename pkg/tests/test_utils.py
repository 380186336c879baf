# -*- coding: utf-8 -*-
"""
Module Name: test_utils.py

Description:
This module contains the unit tests for the Utils module. The unit tests in this
module cover file decoding, environment configuration and logging setup.

Author: elreysausage
Date: 2025-06-05
"""

import logging
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import core.utils as ut


class TestUtils(unittest.TestCase):
    """
    Unit tests for the Utils module.

    Attributes:
        tmp: Temporary directory holding sample files.
    """
    def setUp(self):
        """
        Set up the test environment.
        """
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def test_read_text_keeps_newlines(self):
        """
        Tests that read_text decodes without translating line terminators.

        Asserts:
            CRLF terminators survive decoding.
        """
        path = self.dir / 'crlf.csv'
        path.write_bytes(b'a,b\r\n1,2\r\n')
        self.assertEqual(ut.read_text(path), 'a,b\r\n1,2\r\n')

    def test_read_text_decode_error_offset(self):
        """
        Tests that a decode failure names the offending byte offset.

        Asserts:
            InputDecodeError carries offset 2 and the path.
        """
        path = self.dir / 'bad.csv'
        path.write_bytes(b'ab\xffcd')
        with self.assertRaises(ut.InputDecodeError) as ctx:
            ut.read_text(path)
        self.assertEqual(ctx.exception.offset, 2)
        self.assertIn('offset 2', str(ctx.exception))

    def test_read_text_latin1_fallback(self):
        """
        Tests that the latin-1 fallback decodes otherwise invalid input.
        """
        path = self.dir / 'latin.csv'
        path.write_bytes(b'caf\xe9;1')
        with self.assertLogs('core.utils', level='WARNING'):
            self.assertEqual(ut.read_text(path, latin1_fallback=True), 'café;1')

    def test_read_text_directory(self):
        with self.assertRaises(IsADirectoryError):
            ut.read_text(self.dir)

    def test_get_env_int(self):
        """
        Tests default, valid and invalid worker counts from the environment.
        """
        with patch.dict(os.environ, {}, clear=True):
            self.assertEqual(ut.get_env_int(ut.ENV_WORKERS, 1), 1)
        with patch.dict(os.environ, {ut.ENV_WORKERS: '4'}):
            self.assertEqual(ut.get_env_int(ut.ENV_WORKERS, 1), 4)
        for value in ('zero', '0', '-2'):
            with patch.dict(os.environ, {ut.ENV_WORKERS: value}):
                with self.assertRaises(EnvironmentError):
                    ut.get_env_int(ut.ENV_WORKERS, 1)

    def test_public_helpers(self):
        """
        Asserts:
            The module exposes exactly the helpers the detector and the CLI use.
        """
        helpers = {name for name, value in vars(ut).items()
                   if callable(value) and not name.startswith('_')
                   and getattr(value, '__module__', None) == ut.__name__}
        self.assertEqual(helpers, {'InputDecodeError', 'unicode_version', 'read_text', 'get_env_int',
                                   'configure_logging', 'exact_sum', 'printable_char'})

    def test_configure_logging(self):
        """
        Tests that configure_logging installs one stderr handler at the given level.

        Asserts:
            The root logger level and handler count after configuration.
            Unknown level names raise EnvironmentError.
        """
        root = logging.getLogger()
        saved_handlers, saved_level = list(root.handlers), root.level
        try:
            ut.configure_logging('debug')
            self.assertEqual(root.level, logging.DEBUG)
            self.assertEqual(len(root.handlers), 1)
            with patch.dict(os.environ, {ut.ENV_LOG_LEVEL: 'ERROR'}):
                ut.configure_logging()
            self.assertEqual(root.level, logging.ERROR)
            with self.assertRaises(EnvironmentError):
                ut.configure_logging('LOUD')
        finally:
            root.handlers[:] = saved_handlers
            root.setLevel(saved_level)

    def test_exact_sum(self):
        self.assertEqual(ut.exact_sum([0.1] * 10), 1.0)

    def test_printable_char(self):
        self.assertEqual([ut.printable_char(c) for c in ('', '\t', ' ', ';')], ['ε', '\\t', 'SPACE', ';'])


if __name__ == '__main__':
    unittest.main()
