"""Truth tables for single-digit-position linear operations.

Digits are binary-coded (ceil(log2 b) bits each, little-endian bit
order), so a base-10 binary operation is an 8-input-bit table.  Input
codes that are not valid digits become don't-care rows.  The table's
outputs are the result digit and the offset-encoded carry/borrow-out of
sum(coeff_i * digit_i) at one digit position; carry-in can optionally
be exposed as extra input bits (offset-encoded over its stable window).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BudgetExceeded

EXACT_INPUT_BUDGET = 16


@dataclass(frozen=True)
class DigitOpEncoding:
    """Bit layout bookkeeping for a digit-operation table."""

    coeffs: tuple[int, ...]
    base: int
    digit_bits: int
    carry_lo: int
    carry_hi: int
    carry_in_bits: int
    carry_out_bits: int

    @property
    def arity(self) -> int:
        return len(self.coeffs)


@dataclass
class TruthTable:
    """Complete function table over all 2**input_bits assignments.

    outputs[r] is the output word for input assignment r, or None for a
    don't-care row.  Bit i of an assignment/word is the i-th input/output
    variable.
    """

    input_bits: int
    output_bits: int
    outputs: list[int | None]
    descriptor: str = ""
    encoding: DigitOpEncoding | None = None

    def __post_init__(self):
        if len(self.outputs) != 1 << self.input_bits:
            raise ValueError("outputs must cover every input assignment")

    def care_rows(self) -> list[int]:
        return [r for r, o in enumerate(self.outputs) if o is not None]

    def on_mask(self, j: int) -> int:
        """Bitset (over rows) of assignments where output bit j is 1."""
        mask = 0
        for r, o in enumerate(self.outputs):
            if o is not None and (o >> j) & 1:
                mask |= 1 << r
        return mask

    def dc_mask(self) -> int:
        mask = 0
        for r, o in enumerate(self.outputs):
            if o is None:
                mask |= 1 << r
        return mask

    def to_text(self) -> str:
        """One line per row: input bits, space, output bits ('-' = don't-care).

        Bits print most-significant first.
        """
        lines = []
        for r, o in enumerate(self.outputs):
            in_bits = format(r, f"0{self.input_bits}b")
            out_bits = "-" * self.output_bits if o is None else format(o, f"0{self.output_bits}b")
            lines.append(f"{in_bits} {out_bits}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_text(text: str) -> "TruthTable":
        rows = {}
        input_bits = output_bits = None
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            in_part, out_part = line.split()
            if input_bits is None:
                input_bits, output_bits = len(in_part), len(out_part)
            if len(in_part) != input_bits or len(out_part) != output_bits:
                raise ValueError("inconsistent row widths")
            r = int(in_part, 2)
            rows[r] = None if "-" in out_part else int(out_part, 2)
        if input_bits is None:
            raise ValueError("empty table text")
        if len(rows) != 1 << input_bits:
            raise ValueError("table text does not cover all assignments")
        return TruthTable(input_bits, output_bits, [rows[r] for r in range(1 << input_bits)])


def bits_per_digit(base: int) -> int:
    return (base - 1).bit_length() if base > 1 else 1


def carry_window(coeffs: list[int], base: int, include_carry_in: bool) -> tuple[int, int]:
    """Stable [lo, hi] carry range for digit-serial evaluation of coeffs."""
    s_neg = sum(c * (base - 1) for c in coeffs if c < 0)
    s_pos = sum(c * (base - 1) for c in coeffs if c > 0)
    if not include_carry_in:
        return s_neg // base, s_pos // base
    lo = hi = 0
    while True:
        nlo = (s_neg + lo) // base
        nhi = (s_pos + hi) // base
        if (nlo, nhi) == (lo, hi):
            return lo, hi
        lo, hi = min(lo, nlo), max(hi, nhi)


def build_digit_op_table(
    coeffs: list[int], base: int, include_carry_in: bool = False
) -> TruthTable:
    """Table of one digit position of sum(coeff_i * d_i) (+ carry-in).

    Outputs are the result digit (low bits) then the offset-encoded
    carry/borrow-out.  Raises BudgetExceeded past 16 input bits.
    """
    if not coeffs:
        raise ValueError("need at least one coefficient")
    d = bits_per_digit(base)
    lo, hi = carry_window(coeffs, base, include_carry_in)
    carry_span = hi - lo + 1
    carry_out_bits = max((carry_span - 1).bit_length(), 0)
    carry_in_bits = carry_out_bits if include_carry_in else 0
    input_bits = len(coeffs) * d + carry_in_bits
    if input_bits > EXACT_INPUT_BUDGET:
        raise BudgetExceeded(f"{input_bits} input bits exceed the {EXACT_INPUT_BUDGET}-bit budget")
    output_bits = d + carry_out_bits

    outputs: list[int | None] = []
    for r in range(1 << input_bits):
        digits, rest, valid = [], r, True
        for _ in coeffs:
            digit = rest & ((1 << d) - 1)
            rest >>= d
            if digit >= base:
                valid = False
            digits.append(digit)
        carry_in = 0
        if include_carry_in:
            code = rest & ((1 << carry_in_bits) - 1)
            if code >= carry_span:
                valid = False
            carry_in = lo + code
        if not valid:
            outputs.append(None)
            continue
        total = sum(c * digit for c, digit in zip(coeffs, digits)) + carry_in
        out_digit = total % base
        carry_out = total // base
        outputs.append(out_digit | ((carry_out - lo) << d))

    desc = (
        f"digit op coeffs={tuple(coeffs)} base={base} "
        f"carry_window=[{lo},{hi}] carry_in={'yes' if include_carry_in else 'no'}"
    )
    encoding = DigitOpEncoding(tuple(coeffs), base, d, lo, hi, carry_in_bits, carry_out_bits)
    return TruthTable(input_bits, output_bits, outputs, descriptor=desc, encoding=encoding)
