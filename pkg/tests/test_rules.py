"""Term generation, digit codecs, and seeded sampling."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numseq.errors import ArityMismatch, EmptyRange, NegativeTerm, Overflow
from numseq.rng import SeedContext
from numseq.rules import (
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


def naive_terms(coefficients, initial_terms, count):
    """Independent oracle: literal loop over the defining relation."""
    terms = list(initial_terms)
    k = len(coefficients)
    for n in range(len(initial_terms), count):
        total = 0
        for i in range(k):
            total += coefficients[i] * terms[n - 1 - i]
        terms.append(total)
    return terms


class TestEvalRecurrence:
    def test_fibonacci_base_case(self):
        assert eval_recurrence(linear(1, 1), [1, 1], 6) == [1, 1, 2, 3, 5, 8]

    def test_second_differences_constant(self):
        # (3,-3,1) extends any sequence whose second differences are constant.
        terms = eval_recurrence(linear(3, -3, 1), [1, 2, 4], 6)
        assert terms == [1, 2, 4, 7, 11, 16]
        first = [b - a for a, b in zip(terms, terms[1:])]
        second = [b - a for a, b in zip(first, first[1:])]
        assert len(set(second)) == 1

    def test_rounded_geometric_floor(self):
        # Expected values computed with big-integer floor(13*A/10).
        expected = [10]
        for _ in range(3):
            expected.append((expected[-1] * 13) // 10)
        assert expected == [10, 13, 16, 20]
        assert eval_recurrence(rounded_geometric(13, 10), [10], 4) == expected

    def test_fixed_difference(self):
        assert eval_recurrence(fixed_difference(17), [100], 4) == [100, 117, 134, 151]

    def test_initial_terms_echoed(self):
        out = eval_recurrence(linear(2, -1), [5, 9], 5)
        assert out[:2] == [5, 9]
        assert len(out) == 5

    def test_arity_mismatch(self):
        with pytest.raises(ArityMismatch):
            eval_recurrence(linear(1, 1), [1], 5)
        with pytest.raises(ArityMismatch):
            eval_recurrence(fixed_difference(17), [1, 2], 5)

    def test_negative_term_rejected(self):
        with pytest.raises(NegativeTerm):
            eval_recurrence(linear(2, -1), [10, 5], 8)  # difference -5 crosses zero

    def test_large_terms_exact(self):
        # 500 Fibonacci terms stay exact (no float contamination).
        terms = eval_recurrence(linear(1, 1), [1, 1], 500)
        assert terms[-1] == terms[-2] + terms[-3]
        assert terms[499] > 10**100

    @settings(max_examples=200)
    @given(
        coeffs=st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=4),
        inits=st.data(),
        count=st.integers(min_value=4, max_value=12),
    )
    def test_matches_naive_oracle(self, coeffs, inits, count):
        init = inits.draw(
            st.lists(
                st.integers(min_value=0, max_value=10**6),
                min_size=len(coeffs),
                max_size=len(coeffs),
            )
        )
        count = max(count, len(coeffs))
        rule = linear(*coeffs)
        assert eval_recurrence(rule, init, count) == naive_terms(coeffs, init, count)

    def test_ten_thousand_random_pairs_match_naive(self):
        rng = SeedContext(271828, 0).stream()
        for _ in range(10_000):
            order = rng.randrange(1, 5)
            coeffs = [rng.randrange(0, 6) for _ in range(order)]
            init = [rng.randrange(0, 10**6) for _ in range(order)]
            count = order + rng.randrange(0, 10)
            assert eval_recurrence(linear(*coeffs), init, count) == naive_terms(
                coeffs, init, count
            )


class TestDigitsLE:
    def test_basic(self):
        assert digits_le(17, 10, 4) == [7, 1, 0, 0]

    def test_zero(self):
        assert digits_le(0, 10, 4) == [0, 0, 0, 0]

    def test_all_ones(self):
        assert digits_le(255, 2, 8) == [1] * 8

    def test_overflow(self):
        with pytest.raises(Overflow):
            digits_le(10**4, 10, 4)

    def test_minimal_expansion(self):
        assert digits_le_minimal(0, 10) == [0]
        assert digits_le_minimal(120, 10) == [0, 2, 1]

    @settings(max_examples=300)
    @given(
        base=st.integers(min_value=2, max_value=16),
        width=st.integers(min_value=1, max_value=20),
        data=st.data(),
    )
    def test_round_trip(self, base, width, data):
        term = data.draw(st.integers(min_value=0, max_value=base**width - 1))
        digits = digits_le(term, base, width)
        assert len(digits) == width
        assert all(0 <= d < base for d in digits)
        assert value_from_digits_le(digits, base) == term


class TestSampling:
    def test_range_respected(self):
        split = SplitSpec(0, 20000, "train")
        terms = sample_initial_terms(split, 2, SeedContext(7, 0))
        assert len(terms) == 2
        assert all(0 <= t < 20000 for t in terms)

    def test_validation_range(self):
        split = SplitSpec(9000, 9900, "val")
        (term,) = sample_initial_terms(split, 1, SeedContext(7, 3))
        assert 9000 <= term < 9900

    def test_empty_range(self):
        with pytest.raises(EmptyRange):
            sample_initial_terms(SplitSpec(5, 5, "train"), 1, SeedContext(0, 0))

    def test_deterministic(self):
        split = SplitSpec(0, 30000, "train")
        a = [sample_initial_terms(split, 4, SeedContext(42, i)) for i in range(50)]
        b = [sample_initial_terms(split, 4, SeedContext(42, i)) for i in range(50)]
        assert a == b

    def test_streams_differ(self):
        split = SplitSpec(0, 2**40, "train")
        a = sample_initial_terms(split, 4, SeedContext(42, 0))
        b = sample_initial_terms(split, 4, SeedContext(42, 1))
        c = sample_initial_terms(split, 4, SeedContext(43, 0))
        assert a != b and a != c

    def test_roughly_uniform(self):
        # 4000 draws over 10 buckets: each within 5 sigma of 400.
        split = SplitSpec(0, 10, "train")
        counts = [0] * 10
        for i in range(1000):
            for t in sample_initial_terms(split, 4, SeedContext(9, i)):
                counts[t] += 1
        for c in counts:
            assert abs(c - 400) < 5 * (4000 * 0.1 * 0.9) ** 0.5
