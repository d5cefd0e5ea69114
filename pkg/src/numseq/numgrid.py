"""Number-level task instances: 2-D digit grids of recurrence sequences.

A grid instance holds n input rows and s target rows of l base-b digits
each, little-endian (column 0 is the least significant digit).  Row i
decodes to term A_i; target rows are A_{n+1}..A_{n+s}.  Unused high
digits are zero-padded.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import MalformedOneHot, NegativeTerm, UnsatisfiableConfig
from .rng import SeedContext
from .rules import (
    SequenceRule,
    SplitSpec,
    digits_le,
    eval_recurrence,
    linear,
    sample_initial_terms,
)

MAX_RESAMPLE_ATTEMPTS = 1000

# Initial terms for every number-level family come from these ranges.
NUMBER_TRAIN_SPLIT = SplitSpec(0, 20000, "train")
NUMBER_VAL_SPLIT = SplitSpec(20000, 30000, "val")


@dataclass(frozen=True)
class GridConfig:
    """Grid geometry: n input rows, l digits per row, s target rows, base b."""

    n: int = 8
    l: int = 8
    s: int = 4
    b: int = 10

    def __post_init__(self):
        if self.n < 1 or self.l < 1 or self.s < 1 or self.b < 2:
            raise ValueError("invalid grid config")


@dataclass(frozen=True)
class RuleCatalogEntry:
    """One number-level rule family with its declared complexity and splits."""

    name: str
    rule: SequenceRule | None  # None for the mixture entry
    complexity: int
    mixture_members: tuple[SequenceRule, ...] = ()
    base: int = 10
    default_l: int = 8
    base5_variant: bool = False

    @property
    def is_mixture(self) -> bool:
        return self.rule is None

    @property
    def order(self) -> int:
        if self.is_mixture:
            return max(r.order for r in self.mixture_members)
        return self.rule.order

    def default_config(self) -> GridConfig:
        return GridConfig(n=8, l=self.default_l, s=4, b=self.base)

    def split(self, role: str) -> SplitSpec:
        return NUMBER_TRAIN_SPLIT if role == "train" else NUMBER_VAL_SPLIT


_BINARY_RULES = (linear(1, 1), linear(2, -1), linear(3, -2), linear(1, 2))


def list_rule_catalog() -> list[RuleCatalogEntry]:
    """The eight number-level families with their declared complexities.

    The quaternary family also ships a base-5 variant; base-5 rows get
    l=12 digits so the representable range matches the decimal grids.
    """
    entries = [
        RuleCatalogEntry("fib", linear(1, 1), 1),
        RuleCatalogEntry("arith", linear(2, -1), 1),
        RuleCatalogEntry("lin3m2", linear(3, -2), 1),
        RuleCatalogEntry("lin1p2", linear(1, 2), 1),
        RuleCatalogEntry("lag3", linear(1, 0, 1), 2),
        RuleCatalogEntry("mix", None, 1, mixture_members=_BINARY_RULES),
        RuleCatalogEntry("ternary", linear(2, -1, 1), 2),
        RuleCatalogEntry("quaternary", linear(4, -6, 4, -1), 3, base5_variant=True),
    ]
    return entries


def catalog_entry(name: str) -> RuleCatalogEntry:
    for entry in list_rule_catalog():
        if entry.name == name:
            return entry
    raise KeyError(f"no catalog entry named {name!r}")


def quaternary_base5_entry() -> RuleCatalogEntry:
    """The quaternary family on base-5 digits (l=12 keeps range parity)."""
    decimal = catalog_entry("quaternary")
    return RuleCatalogEntry(
        "quaternary5", decimal.rule, decimal.complexity, base=5, default_l=12
    )


@dataclass
class NumberGridInstance:
    rule: SequenceRule
    input_digits: list[list[int]]  # n rows of l digits, little-endian
    target_digits: list[list[int]]  # s rows of l digits
    initial_terms: list[int]
    config: GridConfig
    split: SplitSpec
    seed: SeedContext
    task: str = ""

    def input_terms(self) -> list[int]:
        b = self.config.b
        return [sum(d * b**i for i, d in enumerate(row)) for row in self.input_digits]

    def target_terms(self) -> list[int]:
        b = self.config.b
        return [sum(d * b**i for i, d in enumerate(row)) for row in self.target_digits]


def _grid_rows(terms: list[int], config: GridConfig) -> list[list[int]]:
    return [digits_le(t, config.b, config.l) for t in terms]


def make_number_grid_instance(
    entry: RuleCatalogEntry,
    config: GridConfig,
    split: SplitSpec,
    seed: SeedContext,
    forced_initial_terms: list[int] | None = None,
) -> NumberGridInstance:
    """Build one grid instance, resampling initial terms until all n+s
    terms are non-negative and fit in l digits.

    For the mixture entry the member rule is drawn once per instance
    (before any term draws) and kept across resampling, so accepted
    instances stay uniform over the four members.
    """
    if split.role == "train":
        expected = entry.split("train")
    else:
        expected = entry.split("val")
    if forced_initial_terms is None and split != expected:
        raise ValueError(f"split {split} does not match the declared {expected}")

    stream = seed.stream()
    rule = entry.rule if not entry.is_mixture else stream.choice(entry.mixture_members)
    count = config.n + config.s

    if forced_initial_terms is not None:
        terms = eval_recurrence(rule, forced_initial_terms, count)
        return NumberGridInstance(
            rule=rule,
            input_digits=_grid_rows(terms[: config.n], config),
            target_digits=_grid_rows(terms[config.n :], config),
            initial_terms=list(forced_initial_terms),
            config=config,
            split=split,
            seed=seed,
            task=entry.name,
        )

    limit = config.b**config.l
    for _ in range(MAX_RESAMPLE_ATTEMPTS):
        init = sample_initial_terms(split, rule.order, seed, stream=stream)
        try:
            terms = eval_recurrence(rule, init, count)
        except NegativeTerm:
            continue
        if any(t >= limit for t in terms):
            continue
        return NumberGridInstance(
            rule=rule,
            input_digits=_grid_rows(terms[: config.n], config),
            target_digits=_grid_rows(terms[config.n :], config),
            initial_terms=init,
            config=config,
            split=split,
            seed=seed,
            task=entry.name,
        )
    raise UnsatisfiableConfig(
        f"no representable instance for {entry.name} after {MAX_RESAMPLE_ATTEMPTS} attempts"
    )


def onehot_encode(digits, b: int) -> np.ndarray:
    """Expand a rows x l digit matrix into a rows x l x b one-hot tensor."""
    arr = np.asarray(digits, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("digit matrix must be 2-D")
    if arr.min(initial=0) < 0 or arr.max(initial=0) >= b:
        raise ValueError(f"digit out of range for base {b}")
    tensor = np.zeros((*arr.shape, b), dtype=np.uint8)
    rows, cols = np.indices(arr.shape)
    tensor[rows, cols, arr] = 1
    return tensor


def onehot_decode(tensor: np.ndarray) -> list[list[int]]:
    """Collapse a one-hot tensor back to a digit matrix.

    Raises MalformedOneHot if any cell has zero or multiple active channels.
    """
    arr = np.asarray(tensor)
    if arr.ndim != 3:
        raise ValueError("one-hot tensor must be 3-D")
    active = (arr != 0).sum(axis=2)
    if (active != 1).any():
        r, c = np.argwhere(active != 1)[0]
        raise MalformedOneHot(f"cell ({r}, {c}) has {active[r, c]} active channels")
    return np.argmax(arr, axis=2).tolist()
