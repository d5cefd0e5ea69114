"""Digit-level token streams and instance layout."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from numseq.digitstream import (
    DIGIT_TASKS,
    REVERSE_TRAIN_SPLIT,
    REVERSE_VAL_SPLIT,
    StreamConfig,
    blank_token,
    delimiter_token,
    make_digit_instance,
    make_reverse_instance,
    sample_reverse_instance,
    token_stream,
)
from numseq.rng import SeedContext
from numseq.rules import (
    eval_recurrence,
    fixed_difference,
    linear,
    rounded_geometric,
    value_from_digits_le,
)

B = blank_token(10)  # 10
D = delimiter_token(10)  # 11


def decode_stream(tokens, base):
    """Independent decode: split on blanks, little-endian positional value.

    Returns (complete_terms, trailing_partial_digits).
    """
    terms, cur = [], []
    for t in tokens:
        if t == blank_token(base):
            terms.append(value_from_digits_le(cur, base))
            cur = []
        else:
            assert 0 <= t < base
            cur.append(t)
    return terms, cur


class TestTokenStream:
    def test_arithmetic_prefix(self):
        # 12, 15, 18, ... little-endian with blanks: [2,1,B,5,1,B,8,1,B,...]
        tokens = token_stream(linear(2, -1), [12, 15], 10, 9)
        assert tokens[:9] == [2, 1, B, 5, 1, B, 8, 1, B]

    def test_zero_term_single_digit(self):
        tokens = token_stream(fixed_difference(17), [0], 10, 2)
        assert tokens[:2] == [0, B]

    def test_geometric_example(self):
        tokens = token_stream(rounded_geometric(13, 10), [10], 10, 12)
        assert tokens[:12] == [0, 1, B, 3, 1, B, 6, 1, B, 0, 2, B]

    def test_min_length_honored(self):
        tokens = token_stream(linear(1, 1), [1, 1], 10, 57)
        assert len(tokens) >= 57

    @settings(max_examples=100)
    @given(
        a=st.integers(min_value=0, max_value=5000),
        b=st.integers(min_value=0, max_value=5000),
        length=st.integers(min_value=4, max_value=64),
    )
    def test_stream_decodes_to_terms(self, a, b, length):
        tokens = token_stream(linear(1, 1), [a, b], 10, length)
        terms, partial = decode_stream(tokens, 10)
        expected = eval_recurrence(linear(1, 1), [a, b], max(len(terms), 2) + 1)
        assert terms == expected[: len(terms)]
        # Trailing partial digits are a prefix of the next term's digits.
        if partial:
            from numseq.rules import digits_le_minimal

            assert digits_le_minimal(expected[len(terms)], 10)[: len(partial)] == partial


class TestDigitInstances:
    def test_fixed_difference_layout(self):
        inst = make_digit_instance(
            "fixed_difference", StreamConfig(), DIGIT_TASKS["fixed_difference"].train_split,
            SeedContext(1, 0),
        )
        assert len(inst.input_tokens) == 24 and len(inst.target_tokens) == 24
        assert inst.input_tokens[12:] == [D] * 12
        assert inst.target_tokens[:12] == [D] * 12
        assert inst.rule.difference == 17

    def test_input_prefix_is_stream(self):
        inst = make_digit_instance(
            "fibonacci", StreamConfig(), DIGIT_TASKS["fibonacci"].train_split, SeedContext(2, 5)
        )
        full = token_stream(inst.rule, inst.initial_terms, 10, 24)[:24]
        assert inst.input_tokens[:12] == full[:12]
        assert inst.target_tokens[12:] == full[12:]

    def test_validation_ranges(self):
        for kind, task in DIGIT_TASKS.items():
            inst = make_digit_instance(kind, StreamConfig(), task.val_split, SeedContext(3, 9))
            assert all(task.val_split.contains(t) for t in inst.initial_terms)

    def test_split_mismatch_rejected(self):
        from numseq.rules import SplitSpec

        with pytest.raises(ValueError):
            make_digit_instance(
                "fibonacci", StreamConfig(), SplitSpec(0, 9000, "train"), SeedContext(0, 0)
            )

    def test_arithmetic_can_decrease(self):
        # Negative differences are legal as long as no term crosses zero.
        seen_decreasing = False
        for i in range(200):
            inst = make_digit_instance(
                "arithmetic", StreamConfig(), DIGIT_TASKS["arithmetic"].train_split,
                SeedContext(4, i),
            )
            a, b = inst.initial_terms
            if b < a:
                seen_decreasing = True
            assert eval_recurrence(inst.rule, [a, b], 8)
        assert seen_decreasing

    def test_deterministic(self):
        kwargs = dict(
            kind="geometric", config=StreamConfig(),
            split=DIGIT_TASKS["geometric"].train_split,
        )
        a = make_digit_instance(seed=SeedContext(8, 1), **kwargs)
        b = make_digit_instance(seed=SeedContext(8, 1), **kwargs)
        assert a.input_tokens == b.input_tokens and a.target_tokens == b.target_tokens

    def test_ten_thousand_decode_to_rule_prefix(self):
        # joint stream (input head + target tail) decodes to the rule's terms
        for kind in DIGIT_TASKS:
            task = DIGIT_TASKS[kind]
            for i in range(2500):
                inst = make_digit_instance(kind, StreamConfig(), task.train_split, SeedContext(77, i))
                stream = inst.input_tokens[:12] + inst.target_tokens[12:]
                terms, partial = decode_stream(stream, 10)
                expected = eval_recurrence(inst.rule, inst.initial_terms, len(terms) + 1)
                assert terms == expected[: len(terms)]
                if partial:
                    from numseq.rules import digits_le_minimal

                    assert digits_le_minimal(expected[len(terms)], 10)[: len(partial)] == partial


class TestReverse:
    def test_three_digit_example(self):
        inst = make_reverse_instance(3, 10, SeedContext(0, 0))
        inst.input_tokens = [4, 0, 7, D, D, D]  # layout check with fixed digits
        digits = inst.input_tokens[:3]
        assert [D, D, D] + digits[::-1] == [D, D, D, 7, 0, 4]

    def test_layout(self):
        inst = make_reverse_instance(5, 10, SeedContext(1, 2))
        m = 5
        digits = inst.input_tokens[:m]
        assert all(0 <= d < 10 for d in digits)
        assert inst.input_tokens[m:] == [D] * m
        assert inst.target_tokens == [D] * m + digits[::-1]

    def test_single_symbol(self):
        inst = make_reverse_instance(1, 10, SeedContext(5, 5))
        d = inst.input_tokens[0]
        assert inst.input_tokens == [d, D]
        assert inst.target_tokens == [D, d]

    @settings(max_examples=64, deadline=None)
    @given(m=st.integers(min_value=1, max_value=64), sid=st.integers(min_value=0, max_value=1000))
    def test_reversal_property(self, m, sid):
        inst = make_reverse_instance(m, 10, SeedContext(6, sid))
        assert inst.target_tokens[m:] == inst.input_tokens[:m][::-1]

    def test_train_sampler_lengths(self):
        lengths = set()
        for i in range(500):
            inst = sample_reverse_instance(REVERSE_TRAIN_SPLIT, 10, SeedContext(7, i))
            assert 1 <= inst.m <= 12
            lengths.add(inst.m)
        assert lengths == set(range(1, 13))

    def test_validation_length_16(self):
        inst = sample_reverse_instance(REVERSE_VAL_SPLIT, 10, SeedContext(7, 0))
        assert inst.m == 16
        assert len(inst.input_tokens) == 32
