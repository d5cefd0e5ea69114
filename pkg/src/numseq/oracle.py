"""Run the reference machines over a dataset file's instances."""

from __future__ import annotations

from .automata import (
    build_counter_transducer,
    build_queue_transducer,
    build_reverse_pda,
    run_transducer,
)
from .errors import UnknownKind
from .formats import DIGIT_LEVEL, Dataset, PredictionSet
from .rules import digits_le_minimal, eval_recurrence
from .tasks import get_task


def _counter_digits_needed(dataset: Dataset) -> int:
    """Largest digit count among terms any instance's stream touches."""
    need = 1
    for inst in dataset.instances:
        tokens_needed = len(inst.input)
        count = max(1, tokens_needed // 2 + 1)
        while True:
            terms = eval_recurrence(inst.rule, inst.initial_terms, count)
            spans = [len(digits_le_minimal(t, dataset.header.base)) + 1 for t in terms]
            if sum(spans) >= tokens_needed:
                break
            count *= 2
        used = 0
        for term, span in zip(terms, spans):
            need = max(need, span - 1)
            used += span
            if used >= tokens_needed:
                break
    return need


def oracle_predictions(dataset: Dataset) -> PredictionSet:
    """Token-mode predictions from the task's reference machine.

    Raises UnknownKind for datasets without a machine oracle (all
    number-level tasks: their ground truth is the generator itself).
    """
    header = dataset.header
    if header.level != DIGIT_LEVEL:
        raise UnknownKind("oracles are digit-level machines; no oracle for number-level tasks")
    kind = get_task(header.task).digit_kind
    if kind == "fixed_difference":
        machine = build_counter_transducer(
            17, header.base, _counter_digits_needed(dataset) + 1
        )
    elif kind == "reverse":
        machine = build_reverse_pda(header.base)
    elif kind in ("arithmetic", "fibonacci"):
        machine = build_queue_transducer(kind, header.base)
    elif kind == "geometric":
        machine = build_queue_transducer(kind, header.base, ratio_num=13, ratio_den=10)
    else:
        raise UnknownKind(f"no oracle for task kind {kind!r}")

    preds = PredictionSet(header.ref, "tokens")
    for inst in dataset.instances:
        preds.values[inst.id] = run_transducer(machine, inst.input)
    return preds
