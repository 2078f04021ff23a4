"""Exception hierarchy shared by the library and the CLI.

Library code raises these; only the CLI turns them into process exit codes.
"""
from __future__ import annotations


class HomsumError(Exception):
    exit_code: int = 1


class ArgumentError(HomsumError, ValueError):
    exit_code = 2


class ConfigError(HomsumError):
    exit_code = 2


class SingularInputError(ArgumentError):
    pass


class NumericError(HomsumError, ArithmeticError):
    exit_code = 3


class AcceptanceError(HomsumError):
    exit_code = 4
