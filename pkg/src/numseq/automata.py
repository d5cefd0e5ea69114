"""Reference machines that solve the digit-level tasks exactly.

Each machine is a deterministic transducer making a single left-to-right
pass and emitting exactly one output token per input token, so its
output can be scored like any model prediction.  Three storage classes
are provided:

  - finite:   a fixed bank of digit registers (the counting machine for
              fixed-difference progressions, and a bounded-length
              reverse machine used only for state accounting);
  - pushdown: one stack (the reverse-order machine, exact for every
              input length);
  - queue:    retained terms of unbounded size (arithmetic, general
              Fibonacci, and rounded-geometric continuation).

All arithmetic inside the machines is digit-serial on little-endian
digit lists with explicit carry/borrow, never on whole integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    MalformedStream,
    RegisterOverflow,
    StackUnderflow,
    UnknownKind,
)

FINITE = "finite"
PUSHDOWN = "pushdown"
QUEUE = "queue"

_CLASS_ORDER = {FINITE: 0, PUSHDOWN: 1, QUEUE: 2}


@dataclass(frozen=True)
class MachineClass:
    """Automaton class plus the grammar it corresponds to."""

    name: str
    grammar: str
    state_count_estimate: int | None = None
    state_count_formula: str = ""

    @property
    def order(self) -> int:
        return _CLASS_ORDER[self.name]


# ---------------------------------------------------------------------------
# Digit-serial arithmetic on little-endian digit lists.
# ---------------------------------------------------------------------------


def _normalize(digits: list[int]) -> list[int]:
    while len(digits) > 1 and digits[-1] == 0:
        digits.pop()
    return digits


def _add(x: list[int], y: list[int], base: int) -> list[int]:
    out, carry = [], 0
    for i in range(max(len(x), len(y))):
        total = carry + (x[i] if i < len(x) else 0) + (y[i] if i < len(y) else 0)
        carry, d = divmod(total, base)
        out.append(d)
    while carry:
        carry, d = divmod(carry, base)
        out.append(d)
    return _normalize(out)


def _cmp(x: list[int], y: list[int]) -> int:
    if len(x) != len(y):
        return 1 if len(x) > len(y) else -1
    for a, b in zip(reversed(x), reversed(y)):
        if a != b:
            return 1 if a > b else -1
    return 0


def _sub(x: list[int], y: list[int], base: int) -> list[int]:
    # requires x >= y
    out, borrow = [], 0
    for i in range(len(x)):
        d = x[i] - borrow - (y[i] if i < len(y) else 0)
        borrow = 0
        if d < 0:
            d += base
            borrow = 1
        out.append(d)
    if borrow:
        raise ValueError("digit-serial subtraction went negative")
    return _normalize(out)


def _mul_small(x: list[int], k: int, base: int) -> list[int]:
    out, carry = [], 0
    for d in x:
        total = d * k + carry
        carry, r = divmod(total, base)
        out.append(r)
    while carry:
        carry, r = divmod(carry, base)
        out.append(r)
    return _normalize(out)


# ---------------------------------------------------------------------------
# Transducer shell.
# ---------------------------------------------------------------------------


class Transducer:
    """Single-pass deterministic token transducer.

    A running instance is mutable; build one per concurrent evaluation
    (run_transducer resets state before each run).
    """

    machine_class: MachineClass

    def __init__(self, base: int):
        self.base = base
        self.blank = base
        self.delimiter = base + 1

    def reset(self) -> None:
        raise NotImplementedError

    def step(self, token: int) -> int:
        raise NotImplementedError

    def _check_alphabet(self, token: int) -> None:
        if not 0 <= token <= self.delimiter:
            raise MalformedStream(f"token {token} outside alphabet of base {self.base}")


def run_transducer(machine: Transducer, tokens: list[int]) -> list[int]:
    """Fresh run over the input; output has the same length."""
    machine.reset()
    return [machine.step(t) for t in tokens]


# ---------------------------------------------------------------------------
# Finite: fixed-difference counter with L digit registers.
# ---------------------------------------------------------------------------


class CounterTransducer(Transducer):
    """Continues a fixed-difference progression with bounded registers.

    Storage is L digit cells for the term being parsed, L for the last
    complete term, L for the term being emitted, plus carry and cursor
    registers, so the machine is finite-state: its storage never grows
    with input length.  register_cells reports the L*b digit-cell count.
    """

    def __init__(self, difference: int, base: int, max_digits: int):
        if difference < 1:
            raise ValueError("difference must be >= 1")
        super().__init__(base)
        self.difference = difference
        self.max_digits = max_digits
        self.register_cells = max_digits * base
        digits_of_diff = []
        d = difference
        while d:
            d, r = divmod(d, base)
            digits_of_diff.append(r)
        self._diff_digits = digits_of_diff
        reg_states = sum(base**j for j in range(max_digits + 1))
        self.machine_class = MachineClass(
            FINITE,
            "regular",
            state_count_estimate=2 * reg_states * reg_states * (max_digits + 2),
            state_count_formula="2 * (sum_{j<=L} b^j)^2 * (L+2)",
        )
        self.reset()

    def reset(self) -> None:
        self._phase = "read"
        self._cur: list[int] = []
        self._last: list[int] | None = None
        self._emit: list[int] = []
        self._emit_pos = 0

    def _bounded(self, digits: list[int]) -> list[int]:
        if len(digits) > self.max_digits:
            raise RegisterOverflow(
                f"term needs {len(digits)} digits, registers hold {self.max_digits}"
            )
        return digits

    def step(self, token: int) -> int:
        self._check_alphabet(token)
        if self._phase == "read":
            if token == self.delimiter:
                self._start_emit()
                return self._emit_next()
            if token == self.blank:
                if not self._cur:
                    raise MalformedStream("blank without preceding digits")
                self._last = self._cur
                self._cur = []
                return self.delimiter
            self._cur = self._bounded(self._cur + [token])
            return self.delimiter
        if token != self.delimiter:
            raise MalformedStream("digit token after the delimiter phase began")
        return self._emit_next()

    def _start_emit(self) -> None:
        if self._last is None:
            raise MalformedStream("delimiter phase before any complete term")
        self._phase = "emit"
        pending = self._bounded(_add(self._last, self._diff_digits, self.base))
        if self._cur and pending[: len(self._cur)] != self._cur:
            raise MalformedStream("partial term does not continue the progression")
        self._emit = pending
        self._emit_pos = len(self._cur)

    def _emit_next(self) -> int:
        if self._emit_pos < len(self._emit):
            d = self._emit[self._emit_pos]
            self._emit_pos += 1
            return d
        self._emit = self._bounded(_add(self._emit, self._diff_digits, self.base))
        self._emit_pos = 0
        return self.blank


def build_counter_transducer(difference: int, base: int, max_digits: int) -> CounterTransducer:
    return CounterTransducer(difference, base, max_digits)


# ---------------------------------------------------------------------------
# Pushdown: exact reverse-order machine.
# ---------------------------------------------------------------------------


class ReversePDA(Transducer):
    """Pushes digits, then pops on delimiters; exact for every length."""

    def __init__(self, base: int):
        super().__init__(base)
        self.machine_class = MachineClass(PUSHDOWN, "context-free")
        self.reset()

    def reset(self) -> None:
        self._stack: list[int] = []
        self._popping = False
        self.stack_high_water = 0

    def step(self, token: int) -> int:
        self._check_alphabet(token)
        if token == self.blank:
            raise MalformedStream("reverse-order streams carry no blanks")
        if token == self.delimiter:
            self._popping = True
            if not self._stack:
                raise StackUnderflow("more delimiters than stacked digits")
            return self._stack.pop()
        if self._popping:
            raise MalformedStream("digit after the delimiter phase began")
        self._stack.append(token)
        self.stack_high_water = max(self.stack_high_water, len(self._stack))
        return self.delimiter


def build_reverse_pda(base: int) -> ReversePDA:
    return ReversePDA(base)


class BoundedReverseFinite(Transducer):
    """Reverse machine with a fixed digit bank: finite-state, exact only
    up to max_digits inputs.  Exists for state-count accounting next to
    the unbounded stack machine."""

    def __init__(self, base: int, max_digits: int):
        super().__init__(base)
        self.max_digits = max_digits
        self.register_cells = max_digits * base
        self.machine_class = MachineClass(
            FINITE,
            "regular",
            state_count_estimate=2 * sum(base**j for j in range(max_digits + 1)),
            state_count_formula="2 * sum_{j<=m} b^j",
        )
        self.reset()

    def reset(self) -> None:
        self._digits: list[int] = []
        self._popping = False

    def step(self, token: int) -> int:
        self._check_alphabet(token)
        if token == self.delimiter:
            self._popping = True
            if not self._digits:
                raise StackUnderflow("more delimiters than stored digits")
            return self._digits.pop()
        if self._popping:
            raise MalformedStream("digit after the delimiter phase began")
        if len(self._digits) >= self.max_digits:
            raise RegisterOverflow(f"digit bank holds {self.max_digits} digits")
        self._digits.append(token)
        return self.delimiter


# ---------------------------------------------------------------------------
# Queue: arithmetic / fibonacci / geometric continuation.
# ---------------------------------------------------------------------------


class QueueTransducer(Transducer):
    """Continues a sequence whose rule needs unbounded retained terms.

    During the read phase every token is enqueued.  At the first
    delimiter the queue is drained: complete terms are recovered, the
    retained ones (two for fibonacci and arithmetic, one for geometric)
    are kept as digit lists, and the in-progress term's digits fix the
    emission cursor.  Continuation terms are then produced digit-serially
    with carry registers, one token per delimiter input.
    """

    def __init__(self, kind: str, base: int, ratio_num: int = 13, ratio_den: int = 10):
        if kind not in ("arithmetic", "fibonacci", "geometric"):
            raise UnknownKind(f"no queue machine for kind {kind!r}")
        if kind == "geometric" and ratio_den != base:
            raise ValueError("geometric queue machine supports ratio_den == base only")
        super().__init__(base)
        self.kind = kind
        self.ratio_num = ratio_num
        self.ratio_den = ratio_den
        self.machine_class = MachineClass(QUEUE, "context-sensitive")
        self.reset()

    def reset(self) -> None:
        self._phase = "read"
        self._queue: list[int] = []
        self._emit: list[int] = []
        self._emit_pos = 0
        # retained state set at phase switch
        self._prev: list[int] | None = None
        self._lastterm: list[int] | None = None
        self._diff_sign = 1
        self._diff: list[int] = []

    def queue_cells(self) -> int:
        return len(self._queue) + len(self._emit) + sum(
            len(t) for t in (self._prev, self._lastterm) if t
        )

    def step(self, token: int) -> int:
        self._check_alphabet(token)
        if self._phase == "read":
            if token == self.delimiter:
                self._start_emit()
                return self._emit_next()
            self._queue.append(token)
            return self.delimiter
        if token != self.delimiter:
            raise MalformedStream("digit token after the delimiter phase began")
        return self._emit_next()

    def _drain_terms(self) -> tuple[list[list[int]], list[int]]:
        terms, cur = [], []
        while self._queue:
            t = self._queue.pop(0)
            if t == self.blank:
                if not cur:
                    raise MalformedStream("blank without preceding digits")
                terms.append(cur)
                cur = []
            else:
                cur.append(t)
        return terms, cur

    def _next_term(self) -> list[int]:
        if self.kind == "fibonacci":
            return _add(self._prev, self._lastterm, self.base)
        if self.kind == "arithmetic":
            if self._diff_sign >= 0:
                return _add(self._lastterm, self._diff, self.base)
            if _cmp(self._lastterm, self._diff) < 0:
                raise MalformedStream("arithmetic continuation would go negative")
            return _sub(self._lastterm, self._diff, self.base)
        product = _mul_small(self._lastterm, self.ratio_num, self.base)
        dropped = product[1:] if len(product) > 1 else [0]
        return _normalize(dropped)

    def _advance(self, new_term: list[int]) -> None:
        if self.kind == "fibonacci":
            self._prev, self._lastterm = self._lastterm, new_term
        else:
            self._lastterm = new_term

    def _start_emit(self) -> None:
        self._phase = "emit"
        terms, partial = self._drain_terms()
        needed = 1 if self.kind == "geometric" else 2
        if len(terms) < needed:
            raise MalformedStream(
                f"{self.kind} machine needs {needed} complete terms before delimiters"
            )
        self._lastterm = terms[-1]
        if needed == 2:
            self._prev = terms[-2]
        if self.kind == "arithmetic":
            self._diff_sign = _cmp(self._lastterm, self._prev)
            if self._diff_sign >= 0:
                self._diff = _sub(self._lastterm, self._prev, self.base)
            else:
                self._diff = _sub(self._prev, self._lastterm, self.base)
        pending = self._next_term()
        if partial and pending[: len(partial)] != partial:
            raise MalformedStream("partial term does not continue the sequence")
        self._advance(pending)
        self._emit = pending
        self._emit_pos = len(partial)

    def _emit_next(self) -> int:
        if self._emit_pos < len(self._emit):
            d = self._emit[self._emit_pos]
            self._emit_pos += 1
            return d
        self._emit = self._next_term()
        self._advance(self._emit)
        self._emit_pos = 0
        return self.blank


def build_queue_transducer(
    kind: str, base: int, ratio_num: int = 13, ratio_den: int = 10
) -> QueueTransducer:
    return QueueTransducer(kind, base, ratio_num=ratio_num, ratio_den=ratio_den)


# ---------------------------------------------------------------------------
# Task classification and oracle dispatch.
# ---------------------------------------------------------------------------

_CLASSIFICATION = {
    "fixed_difference": MachineClass(FINITE, "regular"),
    "reverse": MachineClass(PUSHDOWN, "context-free"),
    "arithmetic": MachineClass(QUEUE, "context-sensitive"),
    "fibonacci": MachineClass(QUEUE, "context-sensitive"),
    "geometric": MachineClass(QUEUE, "context-sensitive"),
}


def classify_task(kind: str) -> MachineClass:
    """Smallest automaton class (and grammar) for a digit-level task."""
    try:
        return _CLASSIFICATION[kind]
    except KeyError:
        raise UnknownKind(f"unknown task kind {kind!r}") from None


def oracle_for_task(kind: str, base: int, max_digits: int = 8) -> Transducer:
    """A ready-to-run transducer solving the given digit-level task."""
    if kind == "fixed_difference":
        return build_counter_transducer(17, base, max_digits)
    if kind == "reverse":
        return build_reverse_pda(base)
    if kind in ("arithmetic", "fibonacci", "geometric"):
        return build_queue_transducer(kind, base)
    raise UnknownKind(f"no oracle for task kind {kind!r}")
