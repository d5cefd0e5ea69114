"""Digit-level task instances: token streams over {digits, blank, delimiter}.

Token coding for base b: values 0..b-1 are digits, b is the blank that
separates terms, b+1 is the delimiter.  A stream is the concatenation,
term by term, of each term's minimal little-endian digits followed by
one blank (format_version 1: separator-after convention).

For numeric tasks the instance input is the first n stream tokens
followed by s delimiters; the target is n delimiters followed by stream
tokens n+1..n+s.  n counts tokens, not terms, so the cut may fall
mid-term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NegativeTerm, UnsatisfiableConfig
from .rng import SeedContext
from .rules import (
    SequenceRule,
    SplitSpec,
    digits_le_minimal,
    eval_recurrence,
    fixed_difference,
    linear,
    rounded_geometric,
    sample_initial_terms,
)

STREAM_FORMAT_VERSION = 1
MAX_RESAMPLE_ATTEMPTS = 1000

# Reverse-order sampling: training lengths 1..12, validation length 16.
REVERSE_TRAIN_SPLIT = SplitSpec(1, 13, "train")
REVERSE_VAL_SPLIT = SplitSpec(16, 17, "val")


def blank_token(base: int) -> int:
    return base


def delimiter_token(base: int) -> int:
    return base + 1


@dataclass(frozen=True)
class StreamConfig:
    """Stream geometry: n input tokens, s continuation tokens, base b."""

    n: int = 12
    s: int = 12
    b: int = 10

    def __post_init__(self):
        if self.n < 1 or self.s < 1 or self.b < 2:
            raise ValueError("invalid stream config")


@dataclass(frozen=True)
class DigitTaskDef:
    """One digit-level task kind with its rule template and split ranges."""

    kind: str
    train_split: SplitSpec
    val_split: SplitSpec
    arity: int

    def split(self, role: str) -> SplitSpec:
        return self.train_split if role == "train" else self.val_split

    def rule(self, initial_terms: list[int]) -> SequenceRule:
        if self.kind == "fixed_difference":
            return fixed_difference(17)
        if self.kind == "arithmetic":
            return linear(2, -1)
        if self.kind == "fibonacci":
            return linear(1, 1)
        if self.kind == "geometric":
            return rounded_geometric(13, 10)
        raise ValueError(f"{self.kind} has no numeric rule")


DIGIT_TASKS: dict[str, DigitTaskDef] = {
    "fixed_difference": DigitTaskDef(
        "fixed_difference", SplitSpec(0, 9000, "train"), SplitSpec(9000, 9900, "val"), 1
    ),
    "arithmetic": DigitTaskDef(
        "arithmetic", SplitSpec(0, 4000, "train"), SplitSpec(4000, 6000, "val"), 2
    ),
    "fibonacci": DigitTaskDef(
        "fibonacci", SplitSpec(0, 4000, "train"), SplitSpec(4000, 6000, "val"), 2
    ),
    "geometric": DigitTaskDef(
        "geometric", SplitSpec(0, 4000, "train"), SplitSpec(4000, 6000, "val"), 1
    ),
}


@dataclass
class DigitInstance:
    kind: str
    input_tokens: list[int]
    target_tokens: list[int]
    rule: SequenceRule
    initial_terms: list[int]
    config: StreamConfig
    split: SplitSpec
    seed: SeedContext
    m: int | None = None  # reverse-order digit count
    format_version: int = STREAM_FORMAT_VERSION


def token_stream(
    rule: SequenceRule, initial_terms: list[int], base: int, min_length: int
) -> list[int]:
    """Concatenated digit/blank tokens of successive terms, >= min_length long."""
    blank = blank_token(base)
    count = max(rule.order, min_length // 2 + 1)
    while True:
        terms = eval_recurrence(rule, initial_terms, count)
        tokens: list[int] = []
        for t in terms:
            tokens.extend(digits_le_minimal(t, base))
            tokens.append(blank)
            if len(tokens) >= min_length:
                return tokens
        count *= 2


def make_digit_instance(
    kind: str, config: StreamConfig, split: SplitSpec, seed: SeedContext
) -> DigitInstance:
    """Build one numeric digit-level instance with rejection resampling."""
    task = DIGIT_TASKS[kind]
    if split not in (task.train_split, task.val_split):
        raise ValueError(f"split {split} does not match {kind} catalog ranges")

    delim = delimiter_token(config.b)
    stream = seed.stream()
    for _ in range(MAX_RESAMPLE_ATTEMPTS):
        init = sample_initial_terms(split, task.arity, seed, stream=stream)
        rule = task.rule(init)
        try:
            tokens = token_stream(rule, init, config.b, config.n + config.s)
        except NegativeTerm:
            continue
        full = tokens[: config.n + config.s]
        return DigitInstance(
            kind=kind,
            input_tokens=full[: config.n] + [delim] * config.s,
            target_tokens=[delim] * config.n + full[config.n :],
            rule=rule,
            initial_terms=init,
            config=config,
            split=split,
            seed=seed,
        )
    raise UnsatisfiableConfig(
        f"no non-negative stream for {kind} after {MAX_RESAMPLE_ATTEMPTS} attempts"
    )


def make_reverse_instance(
    m: int, base: int, seed: SeedContext, split: SplitSpec | None = None
) -> DigitInstance:
    """Reverse-order instance: m random digits + m delimiters in, the
    digits reversed (after m delimiters) out."""
    if m < 1:
        raise ValueError("m must be >= 1")
    stream = seed.stream()
    digits = [stream.randbelow(base) for _ in range(m)]
    delim = delimiter_token(base)
    return DigitInstance(
        kind="reverse",
        input_tokens=digits + [delim] * m,
        target_tokens=[delim] * m + digits[::-1],
        rule=SequenceRule("reverse_order"),
        initial_terms=[],
        config=StreamConfig(n=m, s=m, b=base),
        split=split or REVERSE_TRAIN_SPLIT,
        seed=seed,
        m=m,
    )


def sample_reverse_instance(split: SplitSpec, base: int, seed: SeedContext) -> DigitInstance:
    """Draw the reverse length m from the split range, then the digits.

    Training draws m uniformly from {1..12}; validation pins m=16.
    """
    stream = seed.stream()
    m = stream.randrange(split.lower, split.upper)
    digits = [stream.randbelow(base) for _ in range(m)]
    delim = delimiter_token(base)
    return DigitInstance(
        kind="reverse",
        input_tokens=digits + [delim] * m,
        target_tokens=[delim] * m + digits[::-1],
        rule=SequenceRule("reverse_order"),
        initial_terms=[],
        config=StreamConfig(n=m, s=m, b=base),
        split=split,
        seed=seed,
        m=m,
    )
