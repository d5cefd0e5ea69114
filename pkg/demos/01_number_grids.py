"""Number-level tasks: digit grids of recurrence sequences.
=========================================================

A number-level instance is a 2-D grid: n input rows and s target rows,
each row one term as l little-endian base-b digits.  This script walks
the rule catalog, builds a grid, shows the one-hot expansion, and
re-derives the targets from the decoded inputs.
"""

import numpy as np

from numseq import GridConfig, SeedContext, eval_recurrence, onehot_encode
from numseq.numgrid import NUMBER_TRAIN_SPLIT, catalog_entry, list_rule_catalog, make_number_grid_instance

# ---------------------------------------------------------------------------
# The eight rule families and their declared complexities.
# ---------------------------------------------------------------------------

print("rule catalog:")
for entry in list_rule_catalog():
    rule = "mixture of the four binary rules" if entry.is_mixture else str(entry.rule.coefficients)
    extra = " (base-5 variant available)" if entry.base5_variant else ""
    print(f"  {entry.name:<11} complexity {entry.complexity}  rule {rule}{extra}")

# ---------------------------------------------------------------------------
# Build one general-Fibonacci instance with the default 8x8 geometry.
# ---------------------------------------------------------------------------

inst = make_number_grid_instance(
    catalog_entry("fib"), GridConfig(), NUMBER_TRAIN_SPLIT, SeedContext(2024, 0)
)
print("\ninitial terms:", inst.initial_terms)
print("input rows (little-endian digits, least significant first):")
for row, term in zip(inst.input_digits, inst.input_terms()):
    print("  ", row, "=", term)
print("target rows:")
for row, term in zip(inst.target_digits, inst.target_terms()):
    print("  ", row, "=", term)

# ---------------------------------------------------------------------------
# One-hot expansion: rows x l x b binary tensor, one channel per digit.
# ---------------------------------------------------------------------------

tensor = onehot_encode(inst.input_digits, inst.config.b)
print("\none-hot tensor shape:", tensor.shape)
print("channels active per cell:", int(np.unique(tensor.sum(axis=2))[0]))

# ---------------------------------------------------------------------------
# Self-consistency: decoded inputs + the rule reproduce the targets.
# ---------------------------------------------------------------------------

terms = inst.input_terms()
rederived = eval_recurrence(inst.rule, terms[: inst.rule.order], 12)
assert rederived[8:] == inst.target_terms()
print("\nrederived continuation matches the stored target rows.")
