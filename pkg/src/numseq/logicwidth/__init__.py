"""Truth tables, exact SOP minimization, and composition search."""

from .complexity import (
    PlanNode,
    SearchResult,
    WidthGrowth,
    combinatorial_width,
    complexity_search,
    compound_width,
    estimate_width_growth,
)
from .minimize import CubeTerm, SopCover, minimize_sop, prime_implicants
from .truthtable import (
    DigitOpEncoding,
    TruthTable,
    bits_per_digit,
    build_digit_op_table,
    carry_window,
)

__all__ = [
    "CubeTerm",
    "DigitOpEncoding",
    "PlanNode",
    "SearchResult",
    "SopCover",
    "TruthTable",
    "WidthGrowth",
    "bits_per_digit",
    "build_digit_op_table",
    "carry_window",
    "combinatorial_width",
    "complexity_search",
    "compound_width",
    "estimate_width_growth",
    "minimize_sop",
    "prime_implicants",
]
