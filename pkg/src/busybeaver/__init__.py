"""Toolkit for generating, executing, transforming, and storing candidate
busy-beaver Turing machines."""

from .core import (
    HALT,
    Action,
    Dimension,
    Machine,
    MachineFormatError,
    MachineStatus,
    StatusTag,
    format_machine,
    format_machine_body,
    halting_count,
    is_0_dextrous,
    is_exhaustive,
    is_full,
    is_maximising,
    parse_machine,
    parse_machine_body,
    states_of,
    symbols_of,
)

__version__ = "0.1.0"

__all__ = [
    "HALT",
    "Action",
    "Dimension",
    "Machine",
    "MachineFormatError",
    "MachineStatus",
    "StatusTag",
    "format_machine",
    "format_machine_body",
    "halting_count",
    "is_0_dextrous",
    "is_exhaustive",
    "is_full",
    "is_maximising",
    "parse_machine",
    "parse_machine_body",
    "states_of",
    "symbols_of",
    "__version__",
]
