"""Sequence rules and exact term generation.

All arithmetic is done on Python's arbitrary-precision integers, so
terms never overflow or round.  The rounded-geometric rule keeps its
ratio as an exact integer fraction (e.g. 13/10) rather than a float.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ArityMismatch, EmptyRange, NegativeTerm, Overflow
from .rng import SeedContext, Stream

LINEAR_RECURRENCE = "linear_recurrence"
FIXED_DIFFERENCE = "fixed_difference"
ROUNDED_GEOMETRIC = "rounded_geometric"
REVERSE_ORDER = "reverse_order"


@dataclass(frozen=True)
class SequenceRule:
    """A term-generation rule.

    kind:
      - linear_recurrence: A_n = c_1*A_{n-1} + ... + c_k*A_{n-k}
      - fixed_difference:  A_{n+1} = A_n + difference
      - rounded_geometric: A_{n+1} = floor(A_n * ratio_num / ratio_den)
      - reverse_order:     no numeric parameters (token-level task)
    """

    kind: str
    coefficients: tuple[int, ...] = ()
    difference: int = 0
    ratio_num: int = 1
    ratio_den: int = 1

    def __post_init__(self):
        if self.kind == LINEAR_RECURRENCE:
            if not self.coefficients:
                raise ValueError("linear_recurrence needs coefficients")
            object.__setattr__(self, "coefficients", tuple(self.coefficients))
        elif self.kind == ROUNDED_GEOMETRIC:
            if self.ratio_den <= 0 or self.ratio_num <= 0:
                raise ValueError("ratio must be a positive fraction")
        elif self.kind not in (FIXED_DIFFERENCE, REVERSE_ORDER):
            raise ValueError(f"unknown rule kind: {self.kind}")

    @property
    def order(self) -> int:
        if self.kind == LINEAR_RECURRENCE:
            return len(self.coefficients)
        if self.kind in (FIXED_DIFFERENCE, ROUNDED_GEOMETRIC):
            return 1
        return 0

    def to_json(self) -> dict:
        if self.kind == LINEAR_RECURRENCE:
            return {"kind": self.kind, "coefficients": list(self.coefficients)}
        if self.kind == FIXED_DIFFERENCE:
            return {"kind": self.kind, "difference": self.difference}
        if self.kind == ROUNDED_GEOMETRIC:
            return {"kind": self.kind, "ratio_num": self.ratio_num, "ratio_den": self.ratio_den}
        return {"kind": self.kind}

    @staticmethod
    def from_json(obj: dict) -> "SequenceRule":
        kind = obj["kind"]
        if kind == LINEAR_RECURRENCE:
            return SequenceRule(kind, coefficients=tuple(obj["coefficients"]))
        if kind == FIXED_DIFFERENCE:
            return SequenceRule(kind, difference=obj["difference"])
        if kind == ROUNDED_GEOMETRIC:
            return SequenceRule(kind, ratio_num=obj["ratio_num"], ratio_den=obj["ratio_den"])
        return SequenceRule(kind)


def linear(*coefficients: int) -> SequenceRule:
    return SequenceRule(LINEAR_RECURRENCE, coefficients=tuple(coefficients))


def fixed_difference(difference: int) -> SequenceRule:
    return SequenceRule(FIXED_DIFFERENCE, difference=difference)


def rounded_geometric(num: int, den: int) -> SequenceRule:
    return SequenceRule(ROUNDED_GEOMETRIC, ratio_num=num, ratio_den=den)


@dataclass(frozen=True)
class SplitSpec:
    """Half-open sampling range [lower, upper) for each initial term."""

    lower: int
    upper: int
    role: str  # "train" | "val"

    def __post_init__(self):
        if self.role not in ("train", "val"):
            raise ValueError(f"split role must be train or val, got {self.role!r}")

    def contains(self, value: int) -> bool:
        return self.lower <= value < self.upper

    def to_json(self) -> dict:
        return {"role": self.role, "lower": self.lower, "upper": self.upper}

    @staticmethod
    def from_json(obj: dict) -> "SplitSpec":
        return SplitSpec(obj["lower"], obj["upper"], obj["role"])


def eval_recurrence(rule: SequenceRule, initial_terms: list[int], count: int) -> list[int]:
    """Return exactly `count` terms, the first `order` of them the initial terms.

    Raises NegativeTerm if any term (initial or generated) is negative,
    ArityMismatch if the initial term count does not equal the rule order.
    """
    if rule.kind == REVERSE_ORDER:
        raise ArityMismatch("reverse_order does not generate numeric terms")
    if len(initial_terms) != rule.order:
        raise ArityMismatch(
            f"rule of order {rule.order} needs {rule.order} initial terms, got {len(initial_terms)}"
        )
    if count < len(initial_terms):
        raise ValueError("count must be at least the number of initial terms")
    if any(t < 0 for t in initial_terms):
        raise NegativeTerm("initial terms must be non-negative")

    terms = list(initial_terms)
    while len(terms) < count:
        if rule.kind == LINEAR_RECURRENCE:
            k = rule.order
            nxt = sum(c * t for c, t in zip(rule.coefficients, terms[-1 : -k - 1 : -1]))
        elif rule.kind == FIXED_DIFFERENCE:
            nxt = terms[-1] + rule.difference
        else:  # rounded_geometric
            nxt = (terms[-1] * rule.ratio_num) // rule.ratio_den
        if nxt < 0:
            raise NegativeTerm(f"term {len(terms) + 1} of {rule.kind} is negative: {nxt}")
        terms.append(nxt)
    return terms


def digits_le(term: int, base: int, width: int) -> list[int]:
    """Fixed-width little-endian digits of a non-negative term, zero-padded."""
    if not 2 <= base <= 36:
        raise ValueError("base must be in [2, 36]")
    if width < 1:
        raise ValueError("width must be positive")
    if term < 0:
        raise NegativeTerm(f"cannot encode negative term {term}")
    if term >= base**width:
        raise Overflow(f"term {term} needs more than {width} base-{base} digits")
    out = []
    for _ in range(width):
        term, d = divmod(term, base)
        out.append(d)
    return out


def digits_le_minimal(term: int, base: int) -> list[int]:
    """Minimal little-endian digit expansion; term 0 yields [0]."""
    if term < 0:
        raise NegativeTerm(f"cannot encode negative term {term}")
    if term == 0:
        return [0]
    out = []
    while term:
        term, d = divmod(term, base)
        out.append(d)
    return out


def value_from_digits_le(digits: list[int], base: int) -> int:
    """Positional value of little-endian digits (inverse of the encoders)."""
    value = 0
    for d in reversed(digits):
        value = value * base + d
    return value


def sample_initial_terms(
    split: SplitSpec, arity: int, seed: SeedContext, stream: Stream | None = None
) -> list[int]:
    """Draw `arity` terms independently and uniformly from the split range.

    An already-open Stream may be passed so that callers doing rejection
    sampling keep consuming the same deterministic stream.
    """
    if split.lower >= split.upper:
        raise EmptyRange(f"split range [{split.lower}, {split.upper}) is empty")
    rng = stream if stream is not None else seed.stream()
    return [rng.randrange(split.lower, split.upper) for _ in range(arity)]
