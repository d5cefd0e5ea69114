"""Bit-exact JSON-lines file formats for datasets and predictions.

A dataset file is UTF-8 JSON lines with LF newlines: line 1 is the
header record, then one instance per line with ids 0..count-1.  Number
grids are stored flat in row-major order; digit streams are flat token
lists.  All numbers are decimal integers (never floats), and key order
is fixed, so generation is byte-reproducible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO

from .rules import SequenceRule, SplitSpec

FORMAT_VERSION = 1

NUMBER_LEVEL = "number"
DIGIT_LEVEL = "digit"


def _dumps(obj: dict) -> str:
    return json.dumps(obj, separators=(",", ":"))


@dataclass
class DatasetHeader:
    task: str
    level: str  # "number" | "digit"
    base: int
    n: int | None
    l: int | None
    s: int | None
    split: SplitSpec
    master_seed: int
    count: int
    format_version: int = FORMAT_VERSION

    def to_json(self) -> dict:
        return {
            "format_version": self.format_version,
            "kind": "dataset",
            "task": self.task,
            "level": self.level,
            "base": self.base,
            "n": self.n,
            "l": self.l,
            "s": self.s,
            "split": self.split.to_json(),
            "master_seed": self.master_seed,
            "count": self.count,
        }

    @staticmethod
    def from_json(obj: dict) -> "DatasetHeader":
        if obj.get("kind") != "dataset":
            raise ValueError("not a dataset header")
        return DatasetHeader(
            task=obj["task"],
            level=obj["level"],
            base=obj["base"],
            n=obj["n"],
            l=obj["l"],
            s=obj["s"],
            split=SplitSpec.from_json(obj["split"]),
            master_seed=obj["master_seed"],
            count=obj["count"],
            format_version=obj["format_version"],
        )

    @property
    def ref(self) -> str:
        return f"{self.task}:{self.split.role}:{self.master_seed}:{self.count}"


@dataclass
class InstanceRecord:
    id: int
    initial_terms: list[int]
    rule: SequenceRule
    input: list[int]
    target: list[int]

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "initial_terms": self.initial_terms,
            "rule": self.rule.to_json(),
            "input": self.input,
            "target": self.target,
        }

    @staticmethod
    def from_json(obj: dict) -> "InstanceRecord":
        return InstanceRecord(
            id=obj["id"],
            initial_terms=obj["initial_terms"],
            rule=SequenceRule.from_json(obj["rule"]),
            input=obj["input"],
            target=obj["target"],
        )


@dataclass
class Dataset:
    header: DatasetHeader
    instances: list[InstanceRecord]

    def __post_init__(self):
        if self.header.count != len(self.instances):
            raise ValueError("header count does not match instance lines")
        for i, inst in enumerate(self.instances):
            if inst.id != i:
                raise ValueError(f"instance ids must be 0..count-1, got {inst.id} at line {i}")


def write_dataset(dataset: Dataset, fh: IO[str]) -> None:
    fh.write(_dumps(dataset.header.to_json()) + "\n")
    for inst in dataset.instances:
        fh.write(_dumps(inst.to_json()) + "\n")


def dataset_to_bytes(dataset: Dataset) -> bytes:
    lines = [_dumps(dataset.header.to_json())]
    lines += [_dumps(inst.to_json()) for inst in dataset.instances]
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_dataset(source: str | Path | IO[str]) -> Dataset:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_dataset(fh)
    lines = [ln for ln in source.read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty dataset file")
    header = DatasetHeader.from_json(json.loads(lines[0]))
    instances = [InstanceRecord.from_json(json.loads(ln)) for ln in lines[1:]]
    return Dataset(header, instances)


@dataclass
class PredictionSet:
    """Predictions for a dataset: token lists or per-cell probability rows."""

    dataset_ref: str
    mode: str  # "tokens" | "probs"
    values: dict[int, list] = field(default_factory=dict)

    def __post_init__(self):
        if self.mode not in ("tokens", "probs"):
            raise ValueError("mode must be tokens or probs")


def write_predictions(preds: PredictionSet, fh: IO[str]) -> None:
    fh.write(
        _dumps(
            {
                "format_version": FORMAT_VERSION,
                "kind": "predictions",
                "dataset_ref": preds.dataset_ref,
                "mode": preds.mode,
            }
        )
        + "\n"
    )
    for pid in sorted(preds.values):
        fh.write(_dumps({"id": pid, "values": preds.values[pid]}) + "\n")


def read_predictions(source: str | Path | IO[str]) -> PredictionSet:
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return read_predictions(fh)
    lines = [ln for ln in source.read().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty prediction file")
    head = json.loads(lines[0])
    if head.get("kind") != "predictions":
        raise ValueError("not a prediction file")
    preds = PredictionSet(head["dataset_ref"], head["mode"])
    for ln in lines[1:]:
        obj = json.loads(ln)
        preds.values[obj["id"]] = obj["values"]
    return preds


def grid_rows(flat: list[int], width: int) -> list[list[int]]:
    if width <= 0 or len(flat) % width:
        raise ValueError("flat grid length is not a multiple of the row width")
    return [flat[i : i + width] for i in range(0, len(flat), width)]
