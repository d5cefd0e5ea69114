"""Scoring: argmax decoding, exact error rates, split checks, breakdowns.

Error rates are exact rationals (wrong/total); decimal renderings are
computed with integer arithmetic so reports never depend on platform
float behavior.  Number-level scoring counts all s*l target cells;
digit-level scoring counts only the s continuation tokens: the n
leading delimiter predictions are validated but not counted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import EmptyVector, MissingMetadata, ShapeMismatch
from .formats import DIGIT_LEVEL, NUMBER_LEVEL, Dataset, PredictionSet
from .rules import SplitSpec


def argmax_decode(probabilities: list[float]) -> int:
    """Index of the maximum value; ties break toward the lowest index."""
    if len(probabilities) == 0:
        raise EmptyVector("cannot argmax an empty vector")
    best, best_v = 0, probabilities[0]
    for i, v in enumerate(probabilities):
        if v > best_v:
            best, best_v = i, v
    return best


def decimal_string(frac: Fraction, places: int = 6) -> str:
    """Exact decimal rendering (round half up), no float involved."""
    scaled = frac * 10**places
    units = (scaled.numerator + scaled.denominator // 2) // scaled.denominator
    whole, rest = divmod(units, 10**places)
    return f"{whole}.{rest:0{places}d}"


@dataclass
class EvalReport:
    total: int
    wrong: int
    per_position: dict[tuple[int, int] | int, int]
    flagged_instances: list[int]
    leading_violations: int = 0
    instances: int = 0

    @property
    def error_rate(self) -> Fraction:
        if self.total == 0:
            return Fraction(0)
        return Fraction(self.wrong, self.total)

    def to_json(self) -> dict:
        per_pos = sorted(
            (list(k) if isinstance(k, tuple) else [k], v) for k, v in self.per_position.items()
        )
        return {
            "instances": self.instances,
            "total": self.total,
            "wrong": self.wrong,
            "error_rate": f"{self.wrong}/{self.total}" if self.total else "0/0",
            "error_rate_decimal": decimal_string(self.error_rate),
            "per_position": [[*pos, count] for pos, count in per_pos],
            "leading_violations": self.leading_violations,
            "flagged_instances": sorted(self.flagged_instances),
        }


def decode_prediction_set(
    preds: PredictionSet, alphabet_size: int | None = None
) -> dict[int, list[int]]:
    """Token lists from a prediction set, argmax-decoding prob rows.

    In probs mode, rows must have alphabet_size entries when given.
    """
    decoded = {}
    for pid, values in preds.values.items():
        if preds.mode == "tokens":
            decoded[pid] = list(values)
        else:
            if alphabet_size is not None:
                for row in values:
                    if len(row) != alphabet_size:
                        raise ShapeMismatch(
                            f"instance {pid}: prob vector has {len(row)} entries, "
                            f"alphabet has {alphabet_size}",
                            missing_ids=[pid],
                        )
            decoded[pid] = [argmax_decode(row) for row in values]
    return decoded


def error_rate(predictions: dict[int, list[int]], dataset: Dataset) -> EvalReport:
    """Score decoded predictions against the dataset's target region.

    Raises ShapeMismatch when ids are missing or lengths disagree.
    """
    header = dataset.header
    missing = [inst.id for inst in dataset.instances if inst.id not in predictions]
    if missing:
        raise ShapeMismatch(
            f"{len(missing)} instance(s) lack predictions", missing_ids=missing
        )
    known = {inst.id for inst in dataset.instances}
    unknown = sorted(set(predictions) - known)
    if unknown:
        raise ShapeMismatch(
            f"{len(unknown)} prediction id(s) not in the dataset", missing_ids=unknown
        )

    total = wrong = leading = 0
    per_position: dict[tuple[int, int] | int, int] = {}
    flagged: list[int] = []

    for inst in dataset.instances:
        pred = predictions[inst.id]
        if header.level == NUMBER_LEVEL:
            cells = header.s * header.l
            if len(pred) != cells:
                raise ShapeMismatch(
                    f"instance {inst.id}: expected {cells} cells, got {len(pred)}",
                    missing_ids=[inst.id],
                )
            bad = False
            for idx, (p, t) in enumerate(zip(pred, inst.target)):
                total += 1
                if p != t:
                    wrong += 1
                    bad = True
                    key = (idx // header.l, idx % header.l)
                    per_position[key] = per_position.get(key, 0) + 1
            if bad:
                flagged.append(inst.id)
        else:
            length = len(inst.target)
            if len(pred) != length:
                raise ShapeMismatch(
                    f"instance {inst.id}: expected {length} tokens, got {len(pred)}",
                    missing_ids=[inst.id],
                )
            n = length - _scored_tokens(header, inst)
            bad = False
            for idx in range(length):
                if idx < n:
                    if pred[idx] != inst.target[idx]:
                        leading += 1
                    continue
                total += 1
                if pred[idx] != inst.target[idx]:
                    wrong += 1
                    bad = True
                    offset = idx - n
                    per_position[offset] = per_position.get(offset, 0) + 1
            if bad:
                flagged.append(inst.id)

    return EvalReport(
        total=total,
        wrong=wrong,
        per_position=per_position,
        flagged_instances=flagged,
        leading_violations=leading,
        instances=len(dataset.instances),
    )


def _scored_tokens(header, inst) -> int:
    # reverse instances carry their own length; numeric tasks use header s
    if header.s is None:
        return len(inst.target) // 2
    return header.s


def position_breakdown(
    predictions: dict[int, list[int]], dataset: Dataset
) -> dict[tuple[int, int] | int, int]:
    """Error counts by (target row, digit position) or token offset."""
    return error_rate(predictions, dataset).per_position


def render_breakdown(report: EvalReport, header) -> str:
    """Text view of error locations ('#' marks an erroneous cell)."""
    lines = []
    if header.level == NUMBER_LEVEL:
        for row in range(header.s):
            marks = [
                "#" if (row, col) in report.per_position else "."
                for col in range(header.l)
            ]
            lines.append("".join(marks))
    else:
        s = header.s if header.s is not None else max(report.per_position, default=0) + 1
        lines.append("".join("#" if i in report.per_position else "." for i in range(s)))
    return "\n".join(lines)


@dataclass
class Violation:
    instance_id: int | None  # None for dataset-global violations
    message: str

    def to_json(self) -> dict:
        return {"instance_id": self.instance_id, "message": self.message}


def check_split(
    dataset: Dataset,
    declared_train: SplitSpec,
    declared_val: SplitSpec,
) -> list[Violation]:
    """Split hygiene: instances inside their declared range, and the
    declared train/validation ranges disjoint."""
    violations: list[Violation] = []
    if max(declared_train.lower, declared_val.lower) < min(
        declared_train.upper, declared_val.upper
    ):
        violations.append(
            Violation(None, "declared train and validation ranges overlap")
        )

    header = dataset.header
    declared = declared_train if header.split.role == "train" else declared_val
    if (header.split.lower, header.split.upper) != (declared.lower, declared.upper):
        violations.append(
            Violation(
                None,
                f"header split [{header.split.lower},{header.split.upper}) does not "
                f"match declared [{declared.lower},{declared.upper})",
            )
        )

    reverse = header.task == "reverse" or (
        header.level == DIGIT_LEVEL and header.s is None
    )
    for inst in dataset.instances:
        if reverse:
            if not inst.input:
                raise MissingMetadata(f"instance {inst.id} has no input to derive m")
            m = len(inst.input) // 2
            if not declared.contains(m):
                violations.append(
                    Violation(inst.id, f"length m={m} outside [{declared.lower},{declared.upper})")
                )
            continue
        if not inst.initial_terms:
            raise MissingMetadata(f"instance {inst.id} lacks initial_terms metadata")
        for term in inst.initial_terms:
            if not declared.contains(term):
                violations.append(
                    Violation(
                        inst.id,
                        f"initial term {term} outside [{declared.lower},{declared.upper})",
                    )
                )
    return violations
