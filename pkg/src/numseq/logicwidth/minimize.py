"""Exact two-level sum-of-products minimization (multi-output).

Prime implicants are generated bottom-up by cube merging with output
tags, then a provably minimum-cardinality cover is selected by
branch-and-bound unate covering.  Product terms shared between outputs
are counted once, so term_count is the multi-output width of the table.

Cubes are pairs (care_mask, values): variable i is fixed to bit i of
`values` when bit i of `care_mask` is set, free otherwise.  A cube's
tag is the set of outputs for which it is an implicant; the tag is a
function of the cube alone, which keeps merging consistent.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import BudgetExceeded
from .truthtable import EXACT_INPUT_BUDGET, TruthTable


@dataclass(frozen=True)
class CubeTerm:
    """One product term: fixed variables plus the outputs it feeds."""

    care_mask: int
    values: int
    output_tag: int  # bitmask over outputs

    def covers(self, row: int) -> bool:
        return (row & self.care_mask) == self.values

    def literals(self, input_bits: int) -> str:
        if self.care_mask == 0:
            return "1"
        parts = []
        for i in range(input_bits):
            if (self.care_mask >> i) & 1:
                parts.append(f"x{i}" if (self.values >> i) & 1 else f"~x{i}")
        return "&".join(parts)


@dataclass
class SopCover:
    """A sum-of-products cover of a truth table."""

    terms: list[CubeTerm]
    input_bits: int
    output_bits: int
    minimal: bool  # True only for exact mode

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def evaluate(self, row: int) -> int:
        out = 0
        for term in self.terms:
            if term.covers(row):
                out |= term.output_tag
        return out

    def matches(self, table: TruthTable) -> bool:
        """Equivalence with the table on all care rows."""
        full = (1 << table.output_bits) - 1
        for r, o in enumerate(table.outputs):
            if o is not None and self.evaluate(r) & full != o:
                return False
        return True


def _row_tags(table: TruthTable) -> tuple[list[int], list[int], int]:
    """Per-output ON masks, per-row tags, and the all-outputs tag."""
    m = table.output_bits
    full_tag = (1 << m) - 1
    on_masks = [table.on_mask(j) for j in range(m)]
    dc = table.dc_mask()
    tags = []
    for r, o in enumerate(table.outputs):
        tags.append(full_tag if o is None else o)
    return on_masks, tags, full_tag


def prime_implicants(table: TruthTable) -> list[CubeTerm]:
    """All multi-output prime implicants of the table."""
    _, tags, _ = _row_tags(table)
    current: dict[tuple[int, int], int] = {}
    full_care = (1 << table.input_bits) - 1
    for r, tag in enumerate(tags):
        if tag:
            current[(full_care, r)] = tag

    primes: list[CubeTerm] = []
    while current:
        merged_away = set()
        next_level: dict[tuple[int, int], int] = {}
        for (care, val), tag in current.items():
            bit_set = care
            while bit_set:
                bit = bit_set & -bit_set
                bit_set ^= bit
                partner = (care, val ^ bit)
                ptag = current.get(partner)
                if ptag is None:
                    continue
                newtag = tag & ptag
                if newtag:
                    next_level[(care ^ bit, val & ~bit)] = newtag
                    if newtag == tag:
                        merged_away.add((care, val))
        for (care, val), tag in current.items():
            if (care, val) not in merged_away:
                primes.append(CubeTerm(care, val, tag))
        current = next_level

    # Drop primes whose cube covers no ON minterm of any tagged output.
    on_masks, _, _ = _row_tags(table)
    useful = []
    for p in primes:
        cube_rows = _cube_row_mask(p, table.input_bits)
        if any((p.output_tag >> j) & 1 and cube_rows & on_masks[j] for j in range(table.output_bits)):
            useful.append(p)
    useful.sort(key=lambda p: (p.care_mask, p.values, p.output_tag))
    return useful


def _cube_row_mask(term: CubeTerm, input_bits: int) -> int:
    free = [i for i in range(input_bits) if not (term.care_mask >> i) & 1]
    mask = 0
    for k in range(1 << len(free)):
        row = term.values
        for idx, i in enumerate(free):
            if (k >> idx) & 1:
                row |= 1 << i
        mask |= 1 << row
    return mask


def _min_cover_indices(coverage: list[int], n_points: int) -> list[int]:
    """Minimum-cardinality cover of points 0..n_points-1 by the given
    coverage bitmasks, via reduction + branch and bound (exact)."""
    full = (1 << n_points) - 1
    if full == 0:
        return []

    # Top-level reductions: essentials, row dominance, column dominance.
    active = list(range(len(coverage)))
    chosen: list[int] = []
    covered = 0
    while True:
        changed = False
        point_coverers: dict[int, list[int]] = {}
        for pt in range(n_points):
            if (covered >> pt) & 1:
                continue
            cs = [ci for ci in active if (coverage[ci] >> pt) & 1]
            if not cs:
                raise ValueError("uncoverable point: primes do not cover the ON set")
            point_coverers[pt] = cs
        # essentials
        for pt, cs in point_coverers.items():
            if len(cs) == 1 and cs[0] not in chosen:
                chosen.append(cs[0])
                covered |= coverage[cs[0]]
                changed = True
        if changed:
            continue
        # row dominance: drop points whose coverer set is a superset
        pts = sorted(point_coverers)
        drop_points = set()
        for a in pts:
            if a in drop_points:
                continue
            ca = set(point_coverers[a])
            for b in pts:
                if b != a and b not in drop_points and ca <= set(point_coverers[b]):
                    if ca == set(point_coverers[b]) and b < a:
                        continue
                    drop_points.add(b)
        if drop_points:
            covered |= sum(1 << p for p in drop_points)
            changed = True
            continue
        # column dominance: drop columns covered by another column
        uncovered_mask = full & ~covered
        eff = {ci: coverage[ci] & uncovered_mask for ci in active}
        drop_cols = set()
        for a in active:
            if a in drop_cols or eff[a] == 0:
                if eff[a] == 0 and a not in chosen:
                    drop_cols.add(a)
                continue
            for b in active:
                if b == a or b in drop_cols:
                    continue
                if eff[a] | eff[b] == eff[b] and (eff[a] != eff[b] or b < a):
                    drop_cols.add(a)
                    break
        if drop_cols:
            active = [ci for ci in active if ci not in drop_cols]
            changed = True
        if not changed:
            break

    uncovered = full & ~covered
    if uncovered == 0:
        return sorted(chosen)

    eff = [(ci, coverage[ci]) for ci in active]
    best: list[int] | None = None

    def lower_bound(unc: int) -> int:
        # greedy independent points: each needs a distinct column
        count, blocked = 0, 0
        remaining = unc
        while remaining:
            pt_bit = remaining & -remaining
            remaining ^= pt_bit
            if pt_bit & blocked:
                continue
            count += 1
            for _, cov in eff:
                if cov & pt_bit:
                    blocked |= cov
        return count

    def branch(unc: int, picked: list[int]) -> None:
        nonlocal best
        if unc == 0:
            if best is None or len(picked) < len(best):
                best = list(picked)
            return
        if best is not None and len(picked) + lower_bound(unc) >= len(best):
            return
        # branch on the uncovered point with fewest coverers
        pivot, pivot_cs = -1, None
        remaining = unc
        while remaining:
            pt_bit = remaining & -remaining
            remaining ^= pt_bit
            cs = [ci for ci, cov in eff if cov & pt_bit]
            if pivot_cs is None or len(cs) < len(pivot_cs):
                pivot, pivot_cs = pt_bit, cs
                if len(cs) == 1:
                    break
        for ci in sorted(pivot_cs, key=lambda c: -bin(coverage[c] & unc).count("1")):
            picked.append(ci)
            branch(unc & ~coverage[ci], picked)
            picked.pop()

    branch(uncovered, [])
    assert best is not None
    return sorted(chosen + best)


def minimize_sop(table: TruthTable, mode: str = "exact") -> SopCover:
    """Minimum (exact mode) or valid (heuristic mode) multi-output cover."""
    if mode not in ("exact", "heuristic"):
        raise ValueError("mode must be 'exact' or 'heuristic'")
    if mode == "exact" and table.input_bits > EXACT_INPUT_BUDGET:
        raise BudgetExceeded(
            f"{table.input_bits} input bits exceed the exact budget of {EXACT_INPUT_BUDGET}"
        )

    primes = prime_implicants(table)
    on_masks = [table.on_mask(j) for j in range(table.output_bits)]

    # Points are (output, ON row) pairs, indexed densely.
    points: list[tuple[int, int]] = []
    for j, mask in enumerate(on_masks):
        rows = mask
        while rows:
            bit = rows & -rows
            rows ^= bit
            points.append((j, bit.bit_length() - 1))
    if not points:
        return SopCover([], table.input_bits, table.output_bits, minimal=True)

    point_index = {pr: i for i, pr in enumerate(points)}
    coverage = []
    for p in primes:
        cube_rows = _cube_row_mask(p, table.input_bits)
        mask = 0
        for j in range(table.output_bits):
            if (p.output_tag >> j) & 1:
                rows = cube_rows & on_masks[j]
                while rows:
                    bit = rows & -rows
                    rows ^= bit
                    mask |= 1 << point_index[(j, bit.bit_length() - 1)]
        coverage.append(mask)

    if mode == "heuristic":
        picked = _greedy_cover(coverage, len(points))
        terms = [primes[i] for i in picked]
        return SopCover(terms, table.input_bits, table.output_bits, minimal=False)

    picked = _min_cover_indices(coverage, len(points))
    terms = [primes[i] for i in picked]
    return SopCover(terms, table.input_bits, table.output_bits, minimal=True)


def _greedy_cover(coverage: list[int], n_points: int) -> list[int]:
    full = (1 << n_points) - 1
    covered = 0
    picked: list[int] = []
    while covered != full:
        best_i, best_gain = -1, 0
        for i, cov in enumerate(coverage):
            gain = bin(cov & ~covered).count("1")
            if gain > best_gain:
                best_i, best_gain = i, gain
        if best_i < 0:
            raise ValueError("uncoverable point: primes do not cover the ON set")
        picked.append(best_i)
        covered |= coverage[best_i]
    return picked
