"""
Command implementations behind the CLI subcommands

Every command prints its verdict and results on stdout and returns a
process exit code.
"""

from enum import IntEnum


class ExitCode(IntEnum):
    OK = 0  # YES, valid, or consistent
    NO = 1  # decision NO or invalid certificate
    INCONSISTENT = 2
    INPUT_ERROR = 3
