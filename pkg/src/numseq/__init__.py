"""Number sequence prediction tasks.

Generators for number-level digit grids and digit-level token streams,
reference automata that solve the digit-level tasks exactly, a
combinatorial-width analyzer for the generation rules, and a scoring
harness with bit-exact file formats.
"""

__version__ = "0.1.0"

from .automata import (
    build_counter_transducer,
    build_queue_transducer,
    build_reverse_pda,
    classify_task,
    run_transducer,
)
from .digitstream import (
    StreamConfig,
    make_digit_instance,
    make_reverse_instance,
    token_stream,
)
from .formats import Dataset, PredictionSet, read_dataset, read_predictions
from .harness import EvalReport, argmax_decode, check_split, error_rate, position_breakdown
from .numgrid import (
    GridConfig,
    list_rule_catalog,
    make_number_grid_instance,
    onehot_decode,
    onehot_encode,
)
from .oracle import oracle_predictions
from .rng import SeedContext
from .rules import (
    SequenceRule,
    SplitSpec,
    digits_le,
    digits_le_minimal,
    eval_recurrence,
    fixed_difference,
    linear,
    rounded_geometric,
    sample_initial_terms,
    value_from_digits_le,
)
from .tasks import generate_dataset, task_names

__all__ = [
    "Dataset",
    "EvalReport",
    "GridConfig",
    "PredictionSet",
    "SeedContext",
    "SequenceRule",
    "SplitSpec",
    "StreamConfig",
    "argmax_decode",
    "build_counter_transducer",
    "build_queue_transducer",
    "build_reverse_pda",
    "check_split",
    "classify_task",
    "digits_le",
    "digits_le_minimal",
    "error_rate",
    "eval_recurrence",
    "fixed_difference",
    "generate_dataset",
    "linear",
    "list_rule_catalog",
    "make_digit_instance",
    "make_number_grid_instance",
    "make_reverse_instance",
    "onehot_decode",
    "onehot_encode",
    "oracle_predictions",
    "position_breakdown",
    "read_dataset",
    "read_predictions",
    "rounded_geometric",
    "run_transducer",
    "sample_initial_terms",
    "task_names",
    "token_stream",
    "value_from_digits_le",
]
