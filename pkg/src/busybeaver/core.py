"""Quintuple Turing machine data model and the corpus text codec.

A machine is a partial transition table over ``n`` standard states and ``m``
tape symbols.  States are rendered as letters (``a`` is the start state,
``z`` the halt state), symbols as single digits with ``0`` the blank.  Every
other module builds on the types here; the single-line text format defined
by :func:`format_machine` / :func:`parse_machine` is the storage format for
generated corpora and must round-trip bit-exactly.

Line grammar::

    <n>x<m> <cell_1> ... <cell_{n*m}> <status>:<steps>

Cells appear in row-major order ((a,0), (a,1), ..., (b,0), ...), each either
``---`` (undefined) or ``<output><direction><state>`` such as ``1rb``.
Status is one of ``H`` (complete, 1-halting), ``B`` (step bound exceeded),
``T`` (tape returned to blank), ``C`` (configuration repeat detected).
Fields are separated by single spaces; no trailing whitespace.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

HALT = -1
"""Sentinel next-state for the halt state; rendered as ``z``."""

MAX_STATES = 25  # letters a..y; z is reserved for the halt state
MAX_SYMBOLS = 10  # symbols are single digits 0..9

LEFT = "l"
RIGHT = "r"
DIRECTIONS = (LEFT, RIGHT)

_DIM_RE = re.compile(r"^(\d+)x(\d+)$")
_STATUS_RE = re.compile(r"^([HBTC]):(\d+)$")


class MachineFormatError(ValueError):
    """A machine line or cell token that does not match the grammar."""


def state_letter(state: int) -> str:
    """Render a state id as its letter (``a``.. for standard, ``z`` for halt)."""
    if state == HALT:
        return "z"
    if not 0 <= state < MAX_STATES:
        raise ValueError(f"state id {state} out of range")
    return chr(ord("a") + state)


def parse_state_letter(ch: str) -> int:
    if ch == "z":
        return HALT
    value = ord(ch) - ord("a")
    if len(ch) != 1 or not 0 <= value < MAX_STATES:
        raise MachineFormatError(f"invalid state letter {ch!r}")
    return value


@dataclass(frozen=True)
class Dimension:
    """Machine size: ``n`` standard states and ``m`` tape symbols."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if not 2 <= self.n <= MAX_STATES:
            raise ValueError(f"state count must be in [2, {MAX_STATES}], got {self.n}")
        if not 2 <= self.m <= MAX_SYMBOLS:
            raise ValueError(f"symbol count must be in [2, {MAX_SYMBOLS}], got {self.m}")

    @property
    def size(self) -> int:
        return self.n * self.m

    def cells(self) -> Iterator[tuple[int, int]]:
        """All (state, symbol) cells in row-major order."""
        for s in range(self.n):
            for i in range(self.m):
                yield (s, i)

    def __str__(self) -> str:
        return f"{self.n}x{self.m}"


@dataclass(frozen=True)
class Action:
    """The right-hand side of one quintuple: write, move, change state."""

    output: int
    direction: str
    next_state: int

    def mirrored(self) -> Action:
        return Action(self.output, LEFT if self.direction == RIGHT else RIGHT, self.next_state)


class Machine:
    """An immutable partial transition table with a fixed dimension.

    The table maps ``(state, symbol)`` cells to :class:`Action`; at most one
    action per cell by construction, which is what makes machines
    deterministic.  Use :meth:`with_transition` to derive modified machines.
    """

    __slots__ = ("dim", "_table")

    def __init__(self, dim: Dimension, table: Mapping[tuple[int, int], Action]):
        copied: dict[tuple[int, int], Action] = {}
        for (s, i), action in table.items():
            if not (isinstance(s, int) and 0 <= s < dim.n):
                raise ValueError(f"cell state {s} out of range for {dim}")
            if not (isinstance(i, int) and 0 <= i < dim.m):
                raise ValueError(f"cell symbol {i} out of range for {dim}")
            if not 0 <= action.output < dim.m:
                raise ValueError(f"output {action.output} out of range for {dim}")
            if action.direction not in DIRECTIONS:
                raise ValueError(f"invalid direction {action.direction!r}")
            if action.next_state != HALT and not 0 <= action.next_state < dim.n:
                raise ValueError(f"next state {action.next_state} out of range for {dim}")
            copied[(s, i)] = action
        self.dim = dim
        self._table = copied

    @property
    def table(self) -> Mapping[tuple[int, int], Action]:
        return MappingProxyType(self._table)

    @property
    def n_transitions(self) -> int:
        return len(self._table)

    def transition(self, state: int, symbol: int) -> Action | None:
        return self._table.get((state, symbol))

    def with_transition(self, state: int, symbol: int, action: Action) -> Machine:
        new_table = dict(self._table)
        new_table[(state, symbol)] = action
        return Machine(self.dim, new_table)

    def cells(self) -> Iterator[tuple[tuple[int, int], Action]]:
        """Defined cells in row-major order."""
        for key in self.dim.cells():
            action = self._table.get(key)
            if action is not None:
                yield key, action

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Machine):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted(self._table.items(), key=lambda kv: kv[0]))))

    def __repr__(self) -> str:
        return f"Machine({self.dim}, {format_machine_body(self)!r})"


class StatusTag(Enum):
    """Generation-time classification stored with each corpus record."""

    COMPLETE = "H"
    BOUND_EXCEEDED = "B"
    BLANK_TAPE = "T"
    CYCLE = "C"


@dataclass(frozen=True)
class MachineStatus:
    tag: StatusTag
    steps: int


def states_of(machine: Machine) -> set[int]:
    """All standard states appearing as a cell key or action target."""
    found: set[int] = set()
    for (s, _), action in machine.table.items():
        found.add(s)
        if action.next_state != HALT:
            found.add(action.next_state)
    return found


def symbols_of(machine: Machine) -> set[int]:
    """All symbols appearing as a cell input or action output."""
    found: set[int] = set()
    for (_, i), action in machine.table.items():
        found.add(i)
        found.add(action.output)
    return found


def halting_count(machine: Machine) -> int:
    """Number of transitions entering the halt state (k in "k-halting")."""
    return sum(1 for action in machine.table.values() if action.next_state == HALT)


def is_exhaustive(machine: Machine) -> bool:
    """True when every (state, symbol) cell has a transition."""
    return machine.n_transitions == machine.dim.size


def is_full(machine: Machine) -> bool:
    """True when all n states and all m symbols actually occur in the table."""
    return (
        len(states_of(machine)) == machine.dim.n
        and len(symbols_of(machine)) == machine.dim.m
    )


def is_maximising(machine: Machine) -> bool:
    """True when every halting transition writes a non-blank symbol."""
    return all(
        action.output != 0
        for action in machine.table.values()
        if action.next_state == HALT
    )


def is_0_dextrous(machine: Machine) -> bool:
    """All n blank-input transitions exist and every one moves right.

    Such machines either never halt or halt within n steps, so the
    enumerator suppresses them.
    """
    zero_actions = [a for (s, i), a in machine.table.items() if i == 0]
    return len(zero_actions) == machine.dim.n and all(
        a.direction == RIGHT for a in zero_actions
    )


def format_cell(action: Action | None) -> str:
    if action is None:
        return "---"
    return f"{action.output}{action.direction}{state_letter(action.next_state)}"


def parse_cell(token: str, dim: Dimension, cell_index: int) -> Action | None:
    s, i = divmod(cell_index, dim.m)
    label = f"cell {cell_index + 1} (state {state_letter(s)!r}, symbol {i})"
    if token == "---":
        return None
    if len(token) != 3:
        raise MachineFormatError(f"{label}: malformed cell token {token!r}")
    out_ch, dir_ch, state_ch = token
    if not out_ch.isdigit():
        raise MachineFormatError(f"{label}: output {out_ch!r} is not a digit")
    output = int(out_ch)
    if output >= dim.m:
        raise MachineFormatError(f"{label}: output symbol {output} out of range for {dim}")
    if dir_ch not in DIRECTIONS:
        raise MachineFormatError(f"{label}: direction {dir_ch!r} is not 'l' or 'r'")
    try:
        next_state = parse_state_letter(state_ch)
    except MachineFormatError:
        raise MachineFormatError(f"{label}: invalid state letter {state_ch!r}") from None
    if next_state != HALT and next_state >= dim.n:
        raise MachineFormatError(f"{label}: next state {state_ch!r} out of range for {dim}")
    return Action(output, dir_ch, next_state)


def format_machine_body(machine: Machine) -> str:
    """The dimension and cell fields of a line, without the status suffix."""
    cells = [format_cell(machine.transition(s, i)) for s, i in machine.dim.cells()]
    return " ".join([str(machine.dim)] + cells)


def format_machine(machine: Machine, status: MachineStatus) -> str:
    """Render one corpus line (without the trailing newline)."""
    return f"{format_machine_body(machine)} {status.tag.value}:{status.steps}"


def _parse_tokens(text: str, what: str) -> list[str]:
    if text.endswith("\n"):
        text = text[:-1]
    if text != text.strip() or "  " in text:
        raise MachineFormatError(f"{what} must use single spaces with no leading/trailing whitespace")
    if not text:
        raise MachineFormatError(f"empty {what}")
    return text.split(" ")


def _parse_dim_and_cells(tokens: list[str], what: str) -> Machine:
    match = _DIM_RE.match(tokens[0])
    if not match:
        raise MachineFormatError(f"malformed dimension field {tokens[0]!r}")
    try:
        dim = Dimension(int(match.group(1)), int(match.group(2)))
    except ValueError as exc:
        raise MachineFormatError(str(exc)) from None
    if len(tokens) != 1 + dim.size:
        raise MachineFormatError(
            f"{what}: expected {dim.size} cells for {dim}, got {len(tokens) - 1}"
        )
    table: dict[tuple[int, int], Action] = {}
    for index, token in enumerate(tokens[1:]):
        action = parse_cell(token, dim, index)
        if action is not None:
            table[divmod(index, dim.m)] = action
    return Machine(dim, table)


def parse_machine_body(text: str) -> Machine:
    """Parse the dimension-and-cells form (no status suffix)."""
    return _parse_dim_and_cells(_parse_tokens(text, "machine text"), "machine text")


def parse_machine(line: str) -> tuple[Machine, MachineStatus]:
    """Parse one corpus line; inverse of :func:`format_machine`."""
    tokens = _parse_tokens(line, "machine line")
    if len(tokens) < 2:
        raise MachineFormatError("machine line must end with a status field")
    status_match = _STATUS_RE.match(tokens[-1])
    if not status_match:
        raise MachineFormatError(f"malformed status field {tokens[-1]!r}")
    status = MachineStatus(StatusTag(status_match.group(1)), int(status_match.group(2)))
    machine = _parse_dim_and_cells(tokens[:-1], "machine line")
    return machine, status


def parse_machine_or_body(text: str) -> tuple[Machine, MachineStatus | None]:
    """Accept a full corpus line or the status-less body (CLI convenience)."""
    tokens = _parse_tokens(text, "machine text")
    if _STATUS_RE.match(tokens[-1]):
        machine, status = parse_machine(text)
        return machine, status
    return _parse_dim_and_cells(tokens, "machine text"), None


def machines_equal_on_shared_cells(partial: Machine, full: Machine) -> bool:
    """True when every defined cell of ``partial`` agrees with ``full``."""
    if partial.dim != full.dim:
        return False
    return all(full.transition(s, i) == a for (s, i), a in partial.table.items())
