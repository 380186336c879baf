# -*- coding: utf-8 -*-
"""
Module Name: utils.py

Description:
The Utils module defines shared helpers for decoding input files, reading
environment configuration, configuring logging and rendering dialect characters.
It may be used across different modules to access shared functions.

Author: elreysausage
Date: 2025-06-02
"""

import logging
import math
import os
import sys
import unicodedata
from pathlib import Path

LOG_FORMAT = '%(asctime)s %(levelname)s %(name)s: %(message)s'
ENV_POLICY = 'DIALECTSNIFF_POLICY'
ENV_LOG_LEVEL = 'DIALECTSNIFF_LOG_LEVEL'
ENV_WORKERS = 'DIALECTSNIFF_WORKERS'

logger = logging.getLogger(__name__)


class InputDecodeError(ValueError):
    """
    Raised when a file cannot be decoded under the declared encoding.

    Attributes:
        path: The file that failed to decode.
        encoding: The encoding that was attempted.
        offset: The byte offset of the first undecodable byte.
    """
    def __init__(self, path: str, encoding: str, offset: int):
        self.path = path
        self.encoding = encoding
        self.offset = offset
        super().__init__(
            f"Cannot decode {path} as {encoding}: invalid byte at offset {offset}")


def unicode_version() -> str:
    """
    Returns the version of the Unicode character database used for categories.
    """
    return unicodedata.unidata_version


def read_text(path: str | Path, encoding: str = 'utf-8', latin1_fallback: bool = False) -> str:
    """
    Reads and decodes a file.

    Arguments:
        path: The file to read.
        encoding: The declared encoding of the file.
        latin1_fallback: Retry once as latin-1 when the declared encoding fails.

    Returns:
        The decoded text. Newlines are left untouched.

    Raises:
        InputDecodeError: If decoding fails and no fallback applies.
        IsADirectoryError: If the path is a directory.
        OSError: For any other read failure.
    """
    path = Path(path)
    if path.is_dir():
        raise IsADirectoryError(f"{path} is a directory")
    raw = path.read_bytes()
    try:
        return raw.decode(encoding)
    except UnicodeDecodeError as e:
        if latin1_fallback and encoding.lower().replace('-', '') != 'latin1':
            logger.warning(
                "Decoding %s as %s failed at byte %d, retrying as latin-1", path, encoding, e.start)
            return raw.decode('latin-1')
        raise InputDecodeError(str(path), encoding, e.start) from e


def get_env_int(name: str, default: int) -> int:
    """
    Reads a positive integer from the environment.

    Arguments:
        name: The environment variable name.
        default: Value used when the variable is unset or empty.

    Returns:
        The configured integer.

    Raises:
        EnvironmentError: If the variable is set but is not a positive integer.
    """
    value = os.environ.get(name)
    if not value:
        return default
    try:
        parsed = int(value)
    except ValueError:
        parsed = 0
    if parsed < 1:
        raise EnvironmentError(f"{name} must be a positive integer, got {value!r}")
    return parsed


def configure_logging(level: str | None = None) -> None:
    """
    Installs a single stderr handler on the root logger.

    Arguments:
        level: A logging level name. Falls back to DIALECTSNIFF_LOG_LEVEL, then WARNING.

    Raises:
        EnvironmentError: If the resolved level name is unknown.
    """
    name = (level or os.environ.get(ENV_LOG_LEVEL) or 'WARNING').upper()
    numeric = logging.getLevelName(name)
    if not isinstance(numeric, int):
        raise EnvironmentError(f"Unknown log level {name!r} - choose from DEBUG, INFO, WARNING, ERROR")
    root = logging.getLogger()
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(numeric)


def exact_sum(values) -> float:
    """
    Sums floats with compensated (correctly rounded) summation.

    Arguments:
        values: An iterable of floats.

    Returns:
        The correctly rounded sum, independent of summation order.
    """
    return math.fsum(values)


def printable_char(char: str) -> str:
    """
    Renders a dialect character for log messages and tables.
    """
    if char == '':
        return 'ε'
    if char == '\t':
        return '\\t'
    if char == ' ':
        return 'SPACE'
    return char
