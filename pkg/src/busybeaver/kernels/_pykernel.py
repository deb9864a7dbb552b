"""Pure-Python kernel backend.

Implements the two hot paths — bounded machine execution and the lazy
tree-normal-form search — on plain dicts and bytearrays.  The compiled
backend in ``_ckernel.pyx`` mirrors this module exactly; both must emit
byte-identical record streams, which the test suite enforces.

Table encoding at the kernel boundary: ``cells`` is ``bytes`` of length
``3*n*m``; cell ``idx = state*m + symbol`` occupies bytes
``[3*idx, 3*idx+2]`` as (output, direction, next) with direction 0=left,
1=right and next one of 0..n-1, HALT_CODE, UNDEF_CODE.
"""

from __future__ import annotations

UNDEF_CODE = 255
HALT_CODE = 254

TAG_HALTED = 0
TAG_UNDEFINED = 1
TAG_BLANK = 2
TAG_CYCLE = 3
TAG_BOUND = 4

BACKEND_NAME = "python"


def _config_key(state: int, head: int, tape: dict[int, int]) -> tuple:
    # Translation-invariant configuration key: identical keys imply identical
    # future behaviour, so a repeat is a sound non-termination witness.
    if not tape:
        return (state,)
    lo = min(tape)
    hi = max(tape)
    return (state, head - lo, bytes(tape.get(p, 0) for p in range(lo, hi + 1)))


def run_machine(
    n: int,
    m: int,
    cells: bytes,
    bound: int,
    detect_blank: bool,
    detect_cycles: bool,
    cycle_cap: int,
) -> dict:
    """Execute from the blank tape until halt, undefined cell, blank-tape
    recurrence (if detecting), configuration repeat (if detecting), or the
    step bound."""
    tape: dict[int, int] = {}
    head = 0
    state = 0
    steps = 0
    state_seen = [False] * n
    state_seen[0] = True
    state_order = [0]
    symbol_seen = [False] * m
    symbol_order: list[int] = []
    blank_seen = False
    blank_step = -1
    blank_state = -1
    first_nonblank_step = -1
    tag = TAG_BOUND
    undef_cell = None
    history: dict[tuple, int] | None = {} if detect_cycles else None
    if history is not None:
        history[_config_key(state, head, tape)] = 0

    while steps < bound:
        sym = tape.get(head, 0)
        if not symbol_seen[sym]:
            symbol_seen[sym] = True
            symbol_order.append(sym)
        off = 3 * (state * m + sym)
        nxt = cells[off + 2]
        if nxt == UNDEF_CODE:
            tag = TAG_UNDEFINED
            undef_cell = (state, sym)
            break
        out = cells[off]
        if out:
            tape[head] = out
            if first_nonblank_step < 0:
                first_nonblank_step = steps + 1
        else:
            tape.pop(head, None)
        if not symbol_seen[out]:
            symbol_seen[out] = True
            symbol_order.append(out)
        head += 1 if cells[off + 1] else -1
        steps += 1
        if not tape:
            blank_seen = True
            blank_step = steps
            blank_state = -1 if nxt == HALT_CODE else nxt
        if nxt == HALT_CODE:
            tag = TAG_HALTED
            state = -1
            break
        state = nxt
        if not state_seen[state]:
            state_seen[state] = True
            state_order.append(state)
        if not tape and detect_blank:
            tag = TAG_BLANK
            break
        if history is not None and len(history) < cycle_cap:
            key = _config_key(state, head, tape)
            if key in history:
                tag = TAG_CYCLE
                break
            history[key] = steps

    return {
        "tag": tag,
        "steps": steps,
        "head": head,
        "state": state,
        "tape": dict(tape),
        "nonblank": len(tape),
        "state_order": state_order,
        "symbol_order": symbol_order,
        "blank_seen": blank_seen,
        "blank_step": blank_step,
        "blank_state": blank_state,
        "first_nonblank_step": first_nonblank_step,
        "undef_cell": undef_cell,
    }


class _TnfSearch:
    """Depth-first search over the nondeterministic generation procedure.

    A partial machine is executed from the blank tape; at the first
    undefined cell the branch splits over the admissible new transitions
    (halting first, then next-state / output / direction ascending with
    left before right).  Irrelevance (blank tape, optionally a repeated
    configuration) and the step bound close a branch with one emitted
    record; completing the table closes it with a complete record.
    """

    def __init__(
        self,
        n: int,
        m: int,
        bound: int,
        detect_blank: bool,
        detect_cycles: bool,
        cycle_cap: int,
        b0_actions: list[tuple[int, int, int]],
        b0_lo: int,
        b0_hi: int,
    ):
        self.n = n
        self.m = m
        self.nm = n * m
        self.bound = bound
        self.detect_blank = detect_blank
        self.detect_cycles = detect_cycles
        self.cycle_cap = cycle_cap
        self.b0_actions = b0_actions
        self.b0_lo = b0_lo
        self.b0_hi = b0_hi
        self.out = bytearray(self.nm)
        self.dirn = bytearray(self.nm)
        self.nxt = bytearray([UNDEF_CODE] * self.nm)
        self.origin = bound + 1
        self.tape = bytearray(2 * bound + 3)
        self.log: list[tuple[int, int]] = []
        self.history: dict[tuple, int] = {}
        self.hist_keys: list[tuple] = []

    # -- table bookkeeping -------------------------------------------------

    def _set(self, idx: int, o: int, d: int, ns: int) -> None:
        self.out[idx] = o
        self.dirn[idx] = d
        self.nxt[idx] = ns
        self.ntrans += 1
        if ns != HALT_CODE and ns == self.k_states:
            self.k_states += 1
        if o == self.k_syms:
            self.k_syms += 1
        if idx % self.m == 0:
            self.zero_cells += 1
            self.zero_right += d

    def _clear(self, idx: int) -> None:
        self.nxt[idx] = UNDEF_CODE

    def _makes_0_dextrous(self, idx: int, d: int) -> bool:
        if idx % self.m != 0:
            return False
        return self.zero_cells + 1 == self.n and self.zero_right + d == self.n

    def _cells_bytes(self) -> bytes:
        # Undefined cells pack canonically as (0, 0, UNDEF) so identical
        # machines yield identical bytes regardless of search history.
        packed = bytearray(3 * self.nm)
        for i in range(self.nm):
            if self.nxt[i] == UNDEF_CODE:
                packed[3 * i + 2] = UNDEF_CODE
            else:
                packed[3 * i] = self.out[i]
                packed[3 * i + 1] = self.dirn[i]
                packed[3 * i + 2] = self.nxt[i]
        return bytes(packed)

    # -- configuration bookkeeping -----------------------------------------

    def _snapshot(self) -> tuple:
        return (
            self.steps,
            self.head,
            self.state,
            len(self.log),
            len(self.hist_keys),
            self.ntrans,
            self.k_states,
            self.k_syms,
            self.zero_cells,
            self.zero_right,
        )

    def _restore(self, snap: tuple) -> None:
        (
            self.steps,
            self.head,
            self.state,
            log_len,
            hist_len,
            self.ntrans,
            self.k_states,
            self.k_syms,
            self.zero_cells,
            self.zero_right,
        ) = snap
        while len(self.log) > log_len:
            pos, old = self.log.pop()
            self.nonblank += (old != 0) - (self.tape[pos] != 0)
            self.tape[pos] = old
        while len(self.hist_keys) > hist_len:
            del self.history[self.hist_keys.pop()]

    def _tape_key(self) -> tuple:
        if self.nonblank == 0:
            return (self.state,)
        lo = self.origin - self.steps
        while not self.tape[lo]:
            lo += 1
        hi = self.origin + self.steps
        while not self.tape[hi]:
            hi -= 1
        return (self.state, self.head - lo, bytes(self.tape[lo : hi + 1]))

    # -- search -------------------------------------------------------------

    RUN_CLOSED = 0
    RUN_DECISION = 1

    def _execute(self) -> int:
        """Advance execution until a record closes or a cell needs filling."""
        m = self.m
        tape = self.tape
        while True:
            if self.steps >= self.bound:
                self.emit = ("B", self.steps)
                return self.RUN_CLOSED
            sym = tape[self.head]
            idx = self.state * m + sym
            nxt = self.nxt[idx]
            if nxt == UNDEF_CODE:
                self.dec_cell = idx
                return self.RUN_DECISION
            assert nxt != HALT_CODE  # halting actions close branches immediately
            old = tape[self.head]
            self.log.append((self.head, old))
            out = self.out[idx]
            tape[self.head] = out
            self.nonblank += (out != 0) - (old != 0)
            self.head += 1 if self.dirn[idx] else -1
            self.steps += 1
            self.state = nxt
            if self.nonblank == 0 and self.detect_blank:
                self.emit = ("T", self.steps)
                return self.RUN_CLOSED
            if self.detect_cycles and len(self.history) < self.cycle_cap:
                key = self._tape_key()
                if key in self.history:
                    self.emit = ("C", self.steps)
                    return self.RUN_CLOSED
                self.history[key] = self.steps
                self.hist_keys.append(key)

    def _explore(self):
        if self._execute() == self.RUN_CLOSED:
            status, steps = self.emit
            yield (self._cells_bytes(), status, steps, self.b0_index)
            return
        cell = self.dec_cell
        snap = self._snapshot()
        # Halting branch: only once every state and symbol already occurs,
        # and never when it would complete a 0-dextrous machine.
        if (
            self.k_states == self.n
            and self.k_syms == self.m
            and not self._makes_0_dextrous(cell, 1)
        ):
            self._set(cell, 1, 1, HALT_CODE)
            yield (self._cells_bytes(), "H", self.steps + 1, self.b0_index)
            self._clear(cell)
            self._restore(snap)
        s_lim = self.k_states + 1 if self.k_states < self.n else self.n
        o_lim = self.k_syms + 1 if self.k_syms < self.m else self.m
        for ns in range(s_lim):
            for o in range(o_lim):
                for d in (0, 1):
                    if self._makes_0_dextrous(cell, d):
                        continue
                    self._set(cell, o, d, ns)
                    if self.ntrans == self.nm - 1:
                        rem = self.nxt.index(UNDEF_CODE)
                        self._set(rem, 1, 1, HALT_CODE)
                        yield (self._cells_bytes(), "H", self.steps, self.b0_index)
                        self._clear(rem)
                    else:
                        yield from self._explore()
                    self._clear(cell)
                    self._restore(snap)

    def records(self):
        for b0_index in range(self.b0_lo, self.b0_hi):
            self.b0_index = b0_index
            # reset table to the fixed first transition (a,0) -> 1rb
            for i in range(self.nm):
                self.nxt[i] = UNDEF_CODE
            self.out[0] = 1
            self.dirn[0] = 1
            self.nxt[0] = 1
            self.ntrans = 1
            self.k_states = 2  # a (cell) and b (target)
            self.k_syms = 2  # 0 (input) and 1 (output)
            self.zero_cells = 1
            self.zero_right = 1
            o, d, ns = self.b0_actions[b0_index]
            self._set(self.m, o, d, ns)
            # reset configuration
            for pos, old in reversed(self.log):
                self.tape[pos] = old
            self.log.clear()
            self.head = self.origin
            self.state = 0
            self.steps = 0
            self.nonblank = 0
            self.history.clear()
            self.hist_keys.clear()
            if self.detect_cycles:
                key = self._tape_key()
                self.history[key] = 0
                self.hist_keys.append(key)
            yield from self._explore()


def tnf_records(
    n: int,
    m: int,
    bound: int,
    detect_blank: bool,
    detect_cycles: bool,
    cycle_cap: int,
    b0_actions: list[tuple[int, int, int]],
    b0_lo: int,
    b0_hi: int,
):
    """Stream (cells, status, steps, b0_index) tuples in emission order."""
    search = _TnfSearch(
        n, m, bound, detect_blank, detect_cycles, cycle_cap, b0_actions, b0_lo, b0_hi
    )
    return search.records()


def tnf_count(
    n: int,
    m: int,
    bound: int,
    detect_blank: bool,
    detect_cycles: bool,
    cycle_cap: int,
    b0_actions: list[tuple[int, int, int]],
    b0_lo: int,
    b0_hi: int,
) -> tuple[int, list[int], dict[str, int]]:
    """Count records without materialising them."""
    per_b0 = [0] * len(b0_actions)
    per_status = {"H": 0, "B": 0, "T": 0, "C": 0}
    total = 0
    for _, status, _, b0_index in tnf_records(
        n, m, bound, detect_blank, detect_cycles, cycle_cap, b0_actions, b0_lo, b0_hi
    ):
        total += 1
        per_b0[b0_index] += 1
        per_status[status] += 1
    return total, per_b0, per_status
