"""Scoring rules, split hygiene, and per-position breakdowns."""

from fractions import Fraction

import pytest

from numseq.errors import EmptyVector, MissingMetadata, ShapeMismatch
from numseq.formats import Dataset, DatasetHeader, InstanceRecord
from numseq.harness import (
    argmax_decode,
    check_split,
    decimal_string,
    error_rate,
    position_breakdown,
    render_breakdown,
)
from numseq.oracle import oracle_predictions
from numseq.rng import SeedContext, Stream
from numseq.rules import SplitSpec
from numseq.tasks import generate_dataset, get_task


class TestArgmax:
    def test_basic(self):
        assert argmax_decode([0.1, 0.7, 0.2]) == 1

    def test_tie_breaks_low(self):
        assert argmax_decode([0.5, 0.5]) == 0

    def test_one_hot_identity(self):
        vec = [0.0] * 10
        vec[6] = 1.0
        assert argmax_decode(vec) == 6

    def test_empty(self):
        with pytest.raises(EmptyVector):
            argmax_decode([])


class TestDecimalString:
    def test_exact(self):
        assert decimal_string(Fraction(1, 32)) == "0.031250"
        assert decimal_string(Fraction(1, 3)) == "0.333333"
        assert decimal_string(Fraction(0)) == "0.000000"
        assert decimal_string(Fraction(1, 4)) == "0.250000"


def perfect_predictions(dataset):
    return {inst.id: list(inst.target) for inst in dataset.instances}


class TestNumberLevelScoring:
    def test_all_correct(self):
        ds = generate_dataset("fib-number", "train", 4, 11)
        report = error_rate(perfect_predictions(ds), ds)
        assert report.wrong == 0 and report.error_rate == 0
        assert report.total == 4 * 32

    def test_one_wrong_cell_of_32(self):
        ds = generate_dataset("fib-number", "train", 1, 11)
        preds = perfect_predictions(ds)
        preds[0][5] = (preds[0][5] + 1) % 10
        report = error_rate(preds, ds)
        assert report.total == 32
        assert report.error_rate == Fraction(1, 32)
        assert report.flagged_instances == [0]

    def test_denominator_is_l_times_s(self):
        ds = generate_dataset("arith-number", "val", 3, 2)
        report = error_rate(perfect_predictions(ds), ds)
        assert report.total == 3 * 8 * 4

    def test_breakdown_row_and_column(self):
        ds = generate_dataset("fib-number", "train", 1, 11)
        preds = perfect_predictions(ds)
        l = ds.header.l
        idx = 2 * l + (l - 1)  # most significant digit of target row 2
        preds[0][idx] = (preds[0][idx] + 1) % 10
        assert position_breakdown(preds, ds) == {(2, l - 1): 1}

    def test_zero_errors_empty_breakdown(self):
        ds = generate_dataset("fib-number", "train", 2, 11)
        assert position_breakdown(perfect_predictions(ds), ds) == {}

    def test_shape_mismatch(self):
        ds = generate_dataset("fib-number", "train", 1, 11)
        with pytest.raises(ShapeMismatch):
            error_rate({0: [1, 2, 3]}, ds)

    def test_missing_ids(self):
        ds = generate_dataset("fib-number", "train", 3, 11)
        preds = perfect_predictions(ds)
        del preds[1]
        with pytest.raises(ShapeMismatch) as exc:
            error_rate(preds, ds)
        assert exc.value.missing_ids == [1]

    def test_unknown_ids_rejected(self):
        ds = generate_dataset("fib-number", "train", 2, 11)
        preds = perfect_predictions(ds)
        preds[99] = preds[0]
        with pytest.raises(ShapeMismatch) as exc:
            error_rate(preds, ds)
        assert exc.value.missing_ids == [99]

    def test_prob_vector_length_enforced(self):
        from numseq.formats import PredictionSet
        from numseq.harness import decode_prediction_set

        preds = PredictionSet("x", "probs", {0: [[0.1, 0.9]]})
        assert decode_prediction_set(preds, alphabet_size=2) == {0: [1]}
        with pytest.raises(ShapeMismatch):
            decode_prediction_set(preds, alphabet_size=10)

    def test_per_position_rates_near_binomial(self):
        ds = generate_dataset("fib-number", "train", 600, 12)
        rng = Stream(SeedContext(97, 0))
        preds = {
            inst.id: [rng.randbelow(10) for _ in range(32)] for inst in ds.instances
        }
        report = error_rate(preds, ds)
        n = 600
        sigma = (n * 0.9 * 0.1) ** 0.5
        for row in range(4):
            for col in range(8):
                count = report.per_position.get((row, col), 0)
                assert abs(count - 0.9 * n) < 3 * sigma

    def test_random_predictions_near_point_nine(self):
        ds = generate_dataset("fib-number", "train", 400, 11)
        rng = Stream(SeedContext(99, 0))
        preds = {
            inst.id: [rng.randbelow(10) for _ in range(32)] for inst in ds.instances
        }
        report = error_rate(preds, ds)
        n = report.total
        sigma = (n * 0.9 * 0.1) ** 0.5
        assert abs(report.wrong - 0.9 * n) < 3 * sigma

    def test_random_digit_predictions_near_binomial_rate(self):
        # digit-level alphabet has b+2 symbols
        ds = generate_dataset("fixdiff", "train", 400, 11)
        rng = Stream(SeedContext(98, 0))
        preds = {
            inst.id: [rng.randbelow(12) for _ in range(24)] for inst in ds.instances
        }
        report = error_rate(preds, ds)
        n = report.total
        p = 11 / 12
        sigma = (n * p * (1 - p)) ** 0.5
        assert abs(report.wrong - p * n) < 3 * sigma


class TestDigitLevelScoring:
    def test_denominator_is_s(self):
        ds = generate_dataset("fixdiff", "train", 1, 5)
        report = error_rate(perfect_predictions(ds), ds)
        assert report.total == 12

    def test_three_wrong_of_twelve(self):
        ds = generate_dataset("fib", "val", 1, 5)
        preds = perfect_predictions(ds)
        for idx in (12, 15, 20):
            preds[0][idx] = (preds[0][idx] + 1) % 12
        report = error_rate(preds, ds)
        assert report.error_rate == Fraction(3, 12) == Fraction(1, 4)
        assert set(report.per_position) == {0, 3, 8}

    def test_leading_delimiters_validated_not_counted(self):
        ds = generate_dataset("geom", "train", 1, 5)
        preds = perfect_predictions(ds)
        preds[0][0] = 3  # should have been a delimiter
        report = error_rate(preds, ds)
        assert report.wrong == 0
        assert report.leading_violations == 1

    def test_reverse_variable_lengths(self):
        ds = generate_dataset("reverse", "train", 50, 5)
        report = error_rate(perfect_predictions(ds), ds)
        assert report.wrong == 0
        # scored region is m tokens per instance
        assert report.total == sum(len(i.target) // 2 for i in ds.instances)

    def test_oracle_scores_zero_all_tasks(self):
        for task in ("fixdiff", "arith", "fib", "geom", "reverse"):
            for split in ("train", "val"):
                ds = generate_dataset(task, split, 64, 13)
                preds = oracle_predictions(ds)
                report = error_rate(preds.values, ds)
                assert report.wrong == 0, (task, split)
                assert report.leading_violations == 0

    def test_permutation_invariance(self):
        ds = generate_dataset("fib", "train", 6, 5)
        preds = perfect_predictions(ds)
        preds[2][13] = 0
        base = error_rate(preds, ds)

        order = [3, 0, 5, 1, 4, 2]
        insts = []
        new_preds = {}
        for new_id, old_id in enumerate(order):
            old = ds.instances[old_id]
            insts.append(
                InstanceRecord(new_id, old.initial_terms, old.rule, old.input, old.target)
            )
            new_preds[new_id] = preds[old_id]
        shuffled = Dataset(
            DatasetHeader(
                ds.header.task, ds.header.level, ds.header.base, ds.header.n,
                ds.header.l, ds.header.s, ds.header.split, ds.header.master_seed,
                len(insts),
            ),
            insts,
        )
        again = error_rate(new_preds, shuffled)
        assert (again.total, again.wrong, again.per_position) == (
            base.total, base.wrong, base.per_position,
        )

    def test_render_breakdown(self):
        ds = generate_dataset("fib-number", "train", 1, 11)
        preds = perfect_predictions(ds)
        preds[0][0] = (preds[0][0] + 1) % 10
        text = render_breakdown(error_rate(preds, ds), ds.header)
        rows = text.splitlines()
        assert len(rows) == 4 and rows[0][0] == "#"


class TestSplitCheck:
    def test_clean_val_dataset(self):
        ds = generate_dataset("arith-number", "val", 16, 3)
        task = get_task("arith-number")
        assert check_split(ds, task.train_split, task.val_split) == []

    def test_out_of_range_instance_detected(self):
        ds = generate_dataset("arith-number", "val", 4, 3)
        ds.instances[2].initial_terms[0] = 100
        task = get_task("arith-number")
        violations = check_split(ds, task.train_split, task.val_split)
        assert len(violations) == 1 and violations[0].instance_id == 2

    def test_overlapping_declared_ranges(self):
        ds = generate_dataset("fixdiff", "train", 2, 3)
        violations = check_split(
            ds, SplitSpec(0, 9000, "train"), SplitSpec(8000, 9900, "val")
        )
        assert any(v.instance_id is None for v in violations)

    def test_reverse_length_checked(self):
        ds = generate_dataset("reverse", "val", 8, 3)
        task = get_task("reverse")
        assert check_split(ds, task.train_split, task.val_split) == []
        ds.instances[0].input = [1, 2, 11, 11]  # m=2, not the declared 16
        violations = check_split(ds, task.train_split, task.val_split)
        assert violations and violations[0].instance_id == 0

    def test_missing_metadata(self):
        ds = generate_dataset("fib", "train", 2, 3)
        ds.instances[1].initial_terms = []
        task = get_task("fib")
        with pytest.raises(MissingMetadata):
            check_split(ds, task.train_split, task.val_split)

    def test_header_range_mismatch_flagged(self):
        ds = generate_dataset("fib", "train", 2, 3)
        violations = check_split(
            ds, SplitSpec(0, 5000, "train"), SplitSpec(5000, 6000, "val")
        )
        assert any("header split" in v.message for v in violations)
