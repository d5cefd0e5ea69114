"""Task registry: CLI task names, default geometry, splits, generation.

Number-level names carry a ``-number`` suffix (``fib-number`` etc.);
digit-level tasks are ``fixdiff``, ``arith``, ``fib``, ``geom`` and
``reverse``.  Instance i of a dataset is generated from the stream
(master_seed, i), so datasets are reproducible and shardable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digitstream import (
    DIGIT_TASKS,
    REVERSE_TRAIN_SPLIT,
    REVERSE_VAL_SPLIT,
    StreamConfig,
    make_digit_instance,
    sample_reverse_instance,
)
from .formats import (
    DIGIT_LEVEL,
    NUMBER_LEVEL,
    Dataset,
    DatasetHeader,
    InstanceRecord,
)
from .numgrid import (
    GridConfig,
    RuleCatalogEntry,
    list_rule_catalog,
    make_number_grid_instance,
    quaternary_base5_entry,
)
from .rng import SeedContext
from .rules import SequenceRule, SplitSpec


@dataclass(frozen=True)
class TaskSpec:
    name: str
    level: str
    train_split: SplitSpec
    val_split: SplitSpec
    digit_kind: str | None = None  # digit-level only
    grid_entry: RuleCatalogEntry | None = None  # number-level only

    def split(self, role: str) -> SplitSpec:
        return self.train_split if role == "train" else self.val_split


def _number_tasks() -> dict[str, TaskSpec]:
    tasks = {}
    for entry in list_rule_catalog() + [quaternary_base5_entry()]:
        name = f"{entry.name}-number"
        tasks[name] = TaskSpec(
            name=name,
            level=NUMBER_LEVEL,
            train_split=entry.split("train"),
            val_split=entry.split("val"),
            grid_entry=entry,
        )
    return tasks


def _digit_tasks() -> dict[str, TaskSpec]:
    names = {
        "fixdiff": "fixed_difference",
        "arith": "arithmetic",
        "fib": "fibonacci",
        "geom": "geometric",
    }
    tasks = {}
    for name, kind in names.items():
        td = DIGIT_TASKS[kind]
        tasks[name] = TaskSpec(
            name=name,
            level=DIGIT_LEVEL,
            train_split=td.train_split,
            val_split=td.val_split,
            digit_kind=kind,
        )
    tasks["reverse"] = TaskSpec(
        name="reverse",
        level=DIGIT_LEVEL,
        train_split=REVERSE_TRAIN_SPLIT,
        val_split=REVERSE_VAL_SPLIT,
        digit_kind="reverse",
    )
    return tasks


TASKS: dict[str, TaskSpec] = {**_number_tasks(), **_digit_tasks()}


def task_names() -> list[str]:
    return sorted(TASKS)


def get_task(name: str) -> TaskSpec:
    try:
        return TASKS[name]
    except KeyError:
        raise KeyError(f"unknown task {name!r}; known: {', '.join(task_names())}") from None


def generate_dataset(
    task_name: str,
    split_role: str,
    count: int,
    master_seed: int,
    n: int | None = None,
    l: int | None = None,
    s: int | None = None,
    base: int | None = None,
) -> Dataset:
    """Deterministically generate a dataset for one task and split."""
    task = get_task(task_name)
    split = task.split(split_role)

    if task.level == NUMBER_LEVEL:
        entry = task.grid_entry
        config = entry.default_config()
        config = GridConfig(
            n=n if n is not None else config.n,
            l=l if l is not None else config.l,
            s=s if s is not None else config.s,
            b=base if base is not None else config.b,
        )
        instances = []
        for i in range(count):
            inst = make_number_grid_instance(entry, config, split, SeedContext(master_seed, i))
            flat_in = [d for row in inst.input_digits for d in row]
            flat_out = [d for row in inst.target_digits for d in row]
            instances.append(
                InstanceRecord(i, inst.initial_terms, inst.rule, flat_in, flat_out)
            )
        header = DatasetHeader(
            task=task_name,
            level=NUMBER_LEVEL,
            base=config.b,
            n=config.n,
            l=config.l,
            s=config.s,
            split=split,
            master_seed=master_seed,
            count=count,
        )
        return Dataset(header, instances)

    if task.digit_kind == "reverse":
        b = base if base is not None else 10
        instances = []
        for i in range(count):
            inst = sample_reverse_instance(split, b, SeedContext(master_seed, i))
            instances.append(
                InstanceRecord(i, [], SequenceRule("reverse_order"), inst.input_tokens, inst.target_tokens)
            )
        header = DatasetHeader(
            task=task_name,
            level=DIGIT_LEVEL,
            base=b,
            n=None,
            l=None,
            s=None,
            split=split,
            master_seed=master_seed,
            count=count,
        )
        return Dataset(header, instances)

    config = StreamConfig(
        n=n if n is not None else 12,
        s=s if s is not None else 12,
        b=base if base is not None else 10,
    )
    instances = []
    for i in range(count):
        inst = make_digit_instance(task.digit_kind, config, split, SeedContext(master_seed, i))
        instances.append(
            InstanceRecord(i, inst.initial_terms, inst.rule, inst.input_tokens, inst.target_tokens)
        )
    header = DatasetHeader(
        task=task_name,
        level=DIGIT_LEVEL,
        base=config.b,
        n=config.n,
        l=None,
        s=config.s,
        split=split,
        master_seed=master_seed,
        count=count,
    )
    return Dataset(header, instances)
