"""Combinatorial width and complexity of the generation rules.
============================================================

The digit-pair operation behind a rule becomes a truth table over
binary-coded digits; its exactly-minimized sum-of-products size is the
rule's combinatorial width.  Widths grow roughly quadratically with the
base for binary rules, and a k-ary rule can trade one wide block for a
deeper composition of narrow ones -- the complexity/difficulty calculus.
"""

from numseq.logicwidth import (
    build_digit_op_table,
    complexity_search,
    estimate_width_growth,
    minimize_sop,
)

# ---------------------------------------------------------------------------
# Exact minimization of the decimal digit-sum table.
# ---------------------------------------------------------------------------

table = build_digit_op_table([1, 1], 10)
cover = minimize_sop(table)
print(f"decimal digit addition: {table.input_bits}-bit table, "
      f"{cover.term_count} product terms (exact, shared across outputs)")
print("first terms:", ", ".join(t.literals(table.input_bits) for t in cover.terms[:4]), "...")

# ---------------------------------------------------------------------------
# Width growth across bases: the quadratic trend.
# ---------------------------------------------------------------------------

growth = estimate_width_growth([1, 1], [2, 3, 4, 5])
print("\ndigit-sum width by base:", growth.counts)
print(f"log-log slope: {growth.slope:.2f}  (quadratic trend)")

# ---------------------------------------------------------------------------
# One ternary block vs. a composition of two binary blocks.
# ---------------------------------------------------------------------------

single = minimize_sop(build_digit_op_table([2, -1, 1], 4)).term_count
result = complexity_search([2, -1, 1], base=4)
print(f"\nternary rule (2,-1,1) at base 4:")
print(f"  single ternary block width: {single}")
print(f"  best 2-function compound width: {result.difficulty}")
print(f"  plan: {result.plan.render(['A', 'B', 'C'])}")

# ---------------------------------------------------------------------------
# Complexity of the catalog rules.
# ---------------------------------------------------------------------------

print("\ncomplexity search (binary catalog, |coeff| <= 8):")
for coeffs in ([1, 1], [2, -1], [2, -1, 1], [4, -6, 4, -1]):
    r = complexity_search(coeffs, compute_difficulty=False)
    print(f"  {str(coeffs):<16} complexity {r.complexity} (chain {r.chain_complexity})")
