"""Kernel backends for the hot loops.

Two interchangeable implementations exist: ``_ckernel`` (Cython) and
``_pykernel`` (pure Python).  The compiled one is preferred at import time;
set ``BUSYBEAVER_KERNEL=python`` to force the fallback.  Both emit
byte-identical results, so everything above this package is backend
agnostic.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .. import core
from . import _pykernel

UNDEF_CODE = _pykernel.UNDEF_CODE
HALT_CODE = _pykernel.HALT_CODE
TAG_HALTED = _pykernel.TAG_HALTED
TAG_UNDEFINED = _pykernel.TAG_UNDEFINED
TAG_BLANK = _pykernel.TAG_BLANK
TAG_CYCLE = _pykernel.TAG_CYCLE
TAG_BOUND = _pykernel.TAG_BOUND

try:
    from . import _ckernel  # type: ignore[attr-defined]
except ImportError:  # pragma: no cover - depends on build environment
    _ckernel = None

if _ckernel is not None and os.environ.get("BUSYBEAVER_KERNEL", "") != "python":
    _impl = _ckernel
else:
    _impl = _pykernel

BACKEND: str = _impl.BACKEND_NAME


def available_backends() -> list[str]:
    names = []
    if _ckernel is not None:
        names.append(_ckernel.BACKEND_NAME)
    names.append(_pykernel.BACKEND_NAME)
    return names


def get_backend(name: str | None):
    """Resolve a backend module by name (None means the default)."""
    if name is None:
        return _impl
    if name == _pykernel.BACKEND_NAME:
        return _pykernel
    if _ckernel is not None and name == _ckernel.BACKEND_NAME:
        return _ckernel
    raise ValueError(f"unknown kernel backend {name!r} (available: {available_backends()})")


def pack_table(machine: core.Machine) -> bytes:
    """Encode a machine table for the kernel boundary (3 bytes per cell)."""
    dim = machine.dim
    packed = bytearray(3 * dim.size)
    for index in range(dim.size):
        packed[3 * index + 2] = UNDEF_CODE
    for (s, i), action in machine.table.items():
        index = s * dim.m + i
        packed[3 * index] = action.output
        packed[3 * index + 1] = 1 if action.direction == core.RIGHT else 0
        nxt = HALT_CODE if action.next_state == core.HALT else action.next_state
        packed[3 * index + 2] = nxt
    return bytes(packed)


def unpack_table(dim: core.Dimension, cells: bytes) -> dict[tuple[int, int], core.Action]:
    table: dict[tuple[int, int], core.Action] = {}
    for index in range(dim.size):
        nxt = cells[3 * index + 2]
        if nxt == UNDEF_CODE:
            continue
        next_state = core.HALT if nxt == HALT_CODE else nxt
        direction = core.RIGHT if cells[3 * index + 1] else core.LEFT
        table[divmod(index, dim.m)] = core.Action(cells[3 * index], direction, next_state)
    return table


def unpack_machine(dim: core.Dimension, cells: bytes) -> core.Machine:
    return core.Machine(dim, unpack_table(dim, cells))


@dataclass(frozen=True)
class RunResult:
    """Raw outcome of a kernel execution (backend-independent shape)."""

    tag: int
    steps: int
    head: int
    state: int
    tape: dict[int, int]
    nonblank: int
    state_order: tuple[int, ...]
    symbol_order: tuple[int, ...]
    blank_seen: bool
    blank_step: int
    blank_state: int
    first_nonblank_step: int
    undef_cell: tuple[int, int] | None


def run_machine(
    machine: core.Machine,
    bound: int,
    detect_blank: bool = True,
    detect_cycles: bool = False,
    cycle_cap: int = 100_000,
    backend: str | None = None,
) -> RunResult:
    """Run a machine from the blank tape under the given limits."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    impl = get_backend(backend)
    raw = impl.run_machine(
        machine.dim.n,
        machine.dim.m,
        pack_table(machine),
        bound,
        detect_blank,
        detect_cycles,
        cycle_cap,
    )
    return RunResult(
        tag=raw["tag"],
        steps=raw["steps"],
        head=raw["head"],
        state=raw["state"],
        tape=raw["tape"],
        nonblank=raw["nonblank"],
        state_order=tuple(raw["state_order"]),
        symbol_order=tuple(raw["symbol_order"]),
        blank_seen=raw["blank_seen"],
        blank_step=raw["blank_step"],
        blank_state=raw["blank_state"],
        first_nonblank_step=raw["first_nonblank_step"],
        undef_cell=raw["undef_cell"],
    )


def tnf_records(
    dim: core.Dimension,
    bound: int,
    detect_blank: bool,
    detect_cycles: bool,
    cycle_cap: int,
    b0_actions: list[tuple[int, int, int]],
    b0_range: tuple[int, int] | None = None,
    backend: str | None = None,
):
    """Stream raw (cells, status, steps, b0_index) records in tree order."""
    impl = get_backend(backend)
    lo, hi = b0_range if b0_range is not None else (0, len(b0_actions))
    if not 0 <= lo <= hi <= len(b0_actions):
        raise ValueError(f"invalid b0 range {lo}:{hi}")
    return impl.tnf_records(
        dim.n, dim.m, bound, detect_blank, detect_cycles, cycle_cap, b0_actions, lo, hi
    )


def tnf_count(
    dim: core.Dimension,
    bound: int,
    detect_blank: bool,
    detect_cycles: bool,
    cycle_cap: int,
    b0_actions: list[tuple[int, int, int]],
    b0_range: tuple[int, int] | None = None,
    backend: str | None = None,
) -> tuple[int, list[int], dict[str, int]]:
    """Count records per b,0 branch and per status without storing them."""
    impl = get_backend(backend)
    lo, hi = b0_range if b0_range is not None else (0, len(b0_actions))
    if not 0 <= lo <= hi <= len(b0_actions):
        raise ValueError(f"invalid b0 range {lo}:{hi}")
    return impl.tnf_count(
        dim.n, dim.m, bound, detect_blank, detect_cycles, cycle_cap, b0_actions, lo, hi
    )
