"""Width measurement and composition search over binary linear ops.

The complexity of a k-ary linear form is the minimum number of binary
linear operations (p*u + q*v with bounded integer coefficients) whose
composition tree computes the form; the difficulty is the smallest
compound width (sum of member widths) among those minimal plans.
Carry/borrow chains are excluded: the search works on the pure linear
form, and member widths are measured on single-digit-position tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..errors import EmptyList, NoPlanFound
from .minimize import minimize_sop
from .truthtable import build_digit_op_table

Vector = tuple[int, ...]


# ---------------------------------------------------------------------------
# Widths.
# ---------------------------------------------------------------------------


def combinatorial_width(
    coeffs: list[int],
    base: int,
    include_carry_in: bool = False,
    growth_bases: tuple[int, ...] = (2, 3, 4, 5),
) -> tuple[int, str]:
    """Minimized multi-output term count plus a fitted asymptotic tag.

    The tag Theta(b^k) comes from the least-squares slope of log(count)
    against log(base) over growth_bases; it is an empirical fit, not a
    proof.
    """
    count = minimize_sop(build_digit_op_table(coeffs, base, include_carry_in)).term_count
    growth = estimate_width_growth(coeffs, list(growth_bases), include_carry_in)
    exponent = max(1, round(growth.slope))
    return count, f"Theta(b^{exponent})"


@dataclass(frozen=True)
class WidthGrowth:
    counts: dict[int, int]
    slope: float


def estimate_width_growth(
    coeffs: list[int], bases: list[int], include_carry_in: bool = False
) -> WidthGrowth:
    """Exact cover sizes per base and the log-log least-squares slope."""
    if len(bases) < 2:
        raise ValueError("need at least two bases to fit a slope")
    counts = {}
    for b in bases:
        table = build_digit_op_table(coeffs, b, include_carry_in)
        counts[b] = minimize_sop(table).term_count
    x = np.log(np.array(sorted(counts), dtype=float))
    y = np.log(np.array([counts[b] for b in sorted(counts)], dtype=float))
    slope = float(np.polyfit(x, y, 1)[0])
    return WidthGrowth(counts, slope)


def compound_width(widths: list[int]) -> int:
    """Sum of member widths of a composition."""
    if not widths:
        raise EmptyList("compound width of an empty composition is undefined")
    return sum(widths)


# ---------------------------------------------------------------------------
# Composition plans.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PlanNode:
    """A composition tree: leaves are input variables, internal nodes
    binary linear ops (p, q) applied to the two subtrees.

    op_multiset holds the canonical (operand-order-normalized) ops of the
    whole subtree; chain is True for left-deep trees (right children all
    leaves), the shape a function-composition chain corresponds to.
    """

    op: tuple[int, int] | None  # None for a leaf
    var: int = -1
    left: "PlanNode | None" = None
    right: "PlanNode | None" = None
    op_multiset: tuple[tuple[int, int], ...] = ()
    chain: bool = True

    @staticmethod
    def leaf(i: int) -> "PlanNode":
        return PlanNode(op=None, var=i)

    @staticmethod
    def apply(p: int, q: int, left: "PlanNode", right: "PlanNode") -> "PlanNode":
        ms = tuple(sorted(left.op_multiset + right.op_multiset + (min((p, q), (q, p)),)))
        chain = right.op is None and left.chain
        return PlanNode(op=(p, q), left=left, right=right, op_multiset=ms, chain=chain)

    def function_count(self) -> int:
        if self.op is None:
            return 0
        return 1 + self.left.function_count() + self.right.function_count()

    def vector(self, arity: int) -> Vector:
        if self.op is None:
            v = [0] * arity
            v[self.var] = 1
            return tuple(v)
        p, q = self.op
        lv, rv = self.left.vector(arity), self.right.vector(arity)
        return tuple(p * a + q * b for a, b in zip(lv, rv))

    def render(self, names: list[str] | None = None) -> str:
        if self.op is None:
            return names[self.var] if names else f"x{self.var}"
        p, q = self.op
        return f"({p},{q})[{self.left.render(names)}, {self.right.render(names)}]"

    def to_json(self) -> dict:
        if self.op is None:
            return {"var": self.var}
        return {
            "op": list(self.op),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        }


@dataclass
class SearchResult:
    complexity: int
    difficulty: int | None
    plan: PlanNode
    chain_complexity: int | None
    op_multisets: list[tuple[tuple[int, int], ...]]


def _catalog(bound: int) -> list[tuple[int, int]]:
    vals = [v for v in range(-bound, bound + 1) if v != 0]
    return [(p, q) for p in vals for q in vals]


def _scaled(target: Vector, mul: int, sub: Vector, div: int) -> Vector | None:
    """(target - mul*sub) / div if integral, else None."""
    out = []
    for t, s in zip(target, sub):
        num = t - mul * s
        if num % div:
            return None
        out.append(num // div)
    return tuple(out)


class _PlanSearch:
    """Enumerates composition trees by size with memoized reachability."""

    def __init__(self, arity: int, coeff_bound: int, intermediate_bound: int):
        self.arity = arity
        self.catalog = _catalog(coeff_bound)
        self.intermediate_bound = intermediate_bound
        self.units = {self._unit(i): PlanNode.leaf(i) for i in range(arity)}
        self.level1 = self._build_level1()
        self._memo: dict[tuple[Vector, int], list[PlanNode]] = {}

    def _unit(self, i: int) -> Vector:
        v = [0] * self.arity
        v[i] = 1
        return tuple(v)

    def _in_bound(self, v: Vector) -> bool:
        return all(abs(c) <= self.intermediate_bound for c in v)

    def _build_level1(self) -> dict[Vector, list[PlanNode]]:
        reps: dict[Vector, dict[tuple, PlanNode]] = {}
        for i in range(self.arity):
            for j in range(self.arity):
                for p, q in self.catalog:
                    v = tuple(
                        p * a + q * b for a, b in zip(self._unit(i), self._unit(j))
                    )
                    if not self._in_bound(v):
                        continue
                    node = PlanNode.apply(p, q, PlanNode.leaf(i), PlanNode.leaf(j))
                    bucket = reps.setdefault(v, {})
                    sig = (node.op_multiset, node.chain)
                    cur = bucket.get(sig)
                    if cur is None or node.render() < cur.render():
                        bucket[sig] = node
        return {v: [bucket[s] for s in sorted(bucket)] for v, bucket in reps.items()}

    def plans_exact(self, target: Vector, k: int) -> list[PlanNode]:
        """All plans computing target with exactly k ops (deduped by shape)."""
        if k == 0:
            return [self.units[target]] if target in self.units else []
        if k == 1:
            return list(self.level1.get(target, []))
        key = (target, k)
        if key in self._memo:
            return self._memo[key]
        # One representative per (op multiset, chainness) class: downstream
        # needs only those two attributes, and collapsing the class keeps
        # the enumeration polynomial.  Ties break on the canonical render.
        reps: dict[tuple, PlanNode] = {}

        def emit(node: PlanNode) -> None:
            sig = (node.op_multiset, node.chain)
            cur = reps.get(sig)
            if cur is None or node.render() < cur.render():
                reps[sig] = node

        # Split the k-1 remaining ops between the two subtrees, enumerate
        # the smaller side (0 or 1 ops: units or level1), and solve for
        # the other side.  k <= 4 guarantees one side is enumerable.
        for left_ops in range(k):
            right_ops = k - 1 - left_ops
            if min(left_ops, right_ops) > 1:
                raise ValueError("plan search supports at most 4 functions")
            enumerate_right = right_ops <= left_ops
            small_ops = right_ops if enumerate_right else left_ops
            small = self.units if small_ops == 0 else self.level1
            for sub, plans in small.items():
                sub_plans = plans if isinstance(plans, list) else [plans]
                for p, q in self.catalog:
                    if enumerate_right:
                        # target = p*other + q*sub
                        other = _scaled(target, q, sub, p)
                    else:
                        # target = p*sub + q*other
                        other = _scaled(target, p, sub, q)
                    if other is None or not self._in_bound(other):
                        continue
                    solved = self.plans_exact(other, left_ops if enumerate_right else right_ops)
                    for other_plan in solved:
                        for sub_plan in sub_plans:
                            if enumerate_right:
                                emit(PlanNode.apply(p, q, other_plan, sub_plan))
                            else:
                                emit(PlanNode.apply(p, q, sub_plan, other_plan))
        found = [reps[sig] for sig in sorted(reps)]
        self._memo[key] = found
        return found


@lru_cache(maxsize=None)
def _op_width_canonical(p: int, q: int, base: int) -> int:
    table = build_digit_op_table([p, q], base)
    return minimize_sop(table).term_count


def _op_width(p: int, q: int, base: int) -> int:
    # operand swap permutes inputs only, so (p,q) and (q,p) share a width
    p, q = min((p, q), (q, p))
    return _op_width_canonical(p, q, base)


def complexity_search(
    target_coeffs: list[int],
    coeff_bound: int = 8,
    max_functions: int = 4,
    base: int = 10,
    compute_difficulty: bool = True,
    intermediate_bound: int = 64,
) -> SearchResult:
    """Minimum composition size for the target linear form, then the
    minimum compound width among plans of that size.

    Trees are admitted (a chain is the left-deep special case); the
    chain minimum is reported separately when it differs.  Deterministic:
    candidate plans are ranked canonically, never by discovery order.
    """
    if len(target_coeffs) > 4:
        raise ValueError("target arity above 4 is out of search scope")
    if max_functions > 4:
        raise ValueError("plan search supports at most 4 functions")
    if any(abs(c) > coeff_bound for c in target_coeffs):
        raise ValueError("target coefficients exceed the catalog bound")
    target = tuple(target_coeffs)
    search = _PlanSearch(len(target), coeff_bound, intermediate_bound)

    plans: list[PlanNode] = []
    complexity = None
    for k in range(max_functions + 1):
        plans = search.plans_exact(target, k)
        if plans:
            complexity = k
            break
    if complexity is None:
        raise NoPlanFound(
            f"no composition of <= {max_functions} catalog ops computes {target}"
        )

    chain_complexity = complexity if any(p.chain for p in plans) else None
    if chain_complexity is None:
        for k in range(complexity + 1, max_functions + 1):
            if any(p.chain for p in search.plans_exact(target, k)):
                chain_complexity = k
                break

    multisets = sorted({p.op_multiset for p in plans})
    if not compute_difficulty or complexity == 0:
        best_plan = min(plans, key=lambda p: p.render())
        assert best_plan.vector(len(target)) == target
        return SearchResult(complexity, None, best_plan, chain_complexity, multisets)

    def multiset_width(ms: tuple[tuple[int, int], ...]) -> int:
        return compound_width([_op_width(p, q, base) for p, q in ms])

    difficulty = min(multiset_width(ms) for ms in multisets)
    winning = min(ms for ms in multisets if multiset_width(ms) == difficulty)
    candidates = [p for p in plans if p.op_multiset == winning]
    best_plan = min(candidates, key=lambda p: p.render())
    assert best_plan.vector(len(target)) == target
    return SearchResult(complexity, difficulty, best_plan, chain_complexity, multisets)
