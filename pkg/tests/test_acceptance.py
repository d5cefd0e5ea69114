"""Acceptance suite: one test per criterion, one PASS line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines and
timings.  Budgets enforced here: oracle soundness < 60 s, width claims
< 600 s.
"""

import json
import time
from fractions import Fraction

from numseq.cli import main as cli_main
from numseq.formats import read_dataset
from numseq.harness import error_rate
from numseq.logicwidth import TruthTable, complexity_search, estimate_width_growth, minimize_sop
from numseq.numgrid import list_rule_catalog
from numseq.rules import eval_recurrence
from numseq.tasks import generate_dataset, task_names

from sop_oracle import oracle_min_cover_size

DIGIT_TASKS = ("fixdiff", "arith", "fib", "geom", "reverse")
SEED = 20260810


def _announce(name: str, detail: str, elapsed: float | None = None) -> None:
    suffix = f" [{elapsed:.1f}s]" if elapsed is not None else ""
    print(f"[PASS] {name}: {detail}{suffix}")


class TestAcceptance:
    def test_01_oracle_soundness(self, tmp_path):
        """Each digit-level task: 10^4 instances, transducer error exactly 0."""
        t0 = time.time()
        for task in DIGIT_TASKS:
            for split in ("train", "val"):
                ds = tmp_path / f"{task}-{split}.jsonl"
                pr = tmp_path / f"{task}-{split}.pred.jsonl"
                assert cli_main(["generate", "--task", task, "--split", split,
                                 "--count", "5000", "--seed", str(SEED),
                                 "--out", str(ds)]) == 0
                assert cli_main(["oracle", str(ds), "--out", str(pr)]) == 0
                assert cli_main(["evaluate", str(ds), str(pr)]) == 0
                parsed = read_dataset(ds)
                from numseq.formats import read_predictions
                from numseq.harness import decode_prediction_set

                report = error_rate(decode_prediction_set(read_predictions(pr)), parsed)
                assert report.wrong == 0, (task, split)
                assert report.leading_violations == 0
        elapsed = time.time() - t0
        assert elapsed < 60, f"oracle soundness took {elapsed:.1f}s (budget 60s)"
        _announce(
            "oracle soundness",
            "5 digit-level tasks x 10^4 instances (both split ranges), error_rate 0 via cmd_evaluate",
            elapsed,
        )

    def test_02_number_level_self_consistency(self):
        """10^4 instances per rule family: rederived targets match stored."""
        t0 = time.time()
        mismatches = 0
        for entry in list_rule_catalog():
            task = f"{entry.name}-number"
            for split, count in (("train", 5000), ("val", 5000)):
                ds = generate_dataset(task, split, count, SEED)
                l = ds.header.l
                for inst in ds.instances:
                    rows_in = [inst.input[i * l : (i + 1) * l] for i in range(ds.header.n)]
                    rows_out = [inst.target[i * l : (i + 1) * l] for i in range(ds.header.s)]
                    b = ds.header.base
                    terms = [sum(d * b**k for k, d in enumerate(row)) for row in rows_in]
                    rederived = eval_recurrence(
                        inst.rule, terms[: inst.rule.order], ds.header.n + ds.header.s
                    )
                    if rederived[: ds.header.n] != terms:
                        mismatches += 1
                        continue
                    for row, term in zip(rows_out, rederived[ds.header.n :]):
                        if sum(d * b**k for k, d in enumerate(row)) != term:
                            mismatches += 1
        assert mismatches == 0
        _announce(
            "number-level self-consistency",
            "8 families x 10^4 instances, targets rederived cell-for-cell, 0 mismatches",
            time.time() - t0,
        )

    def test_03_width_claims(self):
        """Digit-sum growth over bases 2..5 + exhaustive minimality cross-check."""
        t0 = time.time()
        growth = estimate_width_growth([1, 1], [2, 3, 4, 5])
        counts = [growth.counts[b] for b in (2, 3, 4, 5)]
        assert all(a < b for a, b in zip(counts, counts[1:])), counts
        assert 1.5 <= growth.slope <= 2.5, growth.slope

        # exact minimality vs. brute-force cover enumeration, all <=4-input functions
        for n in (1, 2, 3, 4):
            for f in range(1 << (1 << n)):
                outputs = [(f >> r) & 1 for r in range(1 << n)]
                got = minimize_sop(TruthTable(n, 1, outputs)).term_count
                want = oracle_min_cover_size(outputs, n, 1)
                assert got == want, (n, f, got, want)
        elapsed = time.time() - t0
        assert elapsed < 600, f"width claims took {elapsed:.1f}s (budget 600s)"
        _announce(
            "width claims",
            f"digit-sum covers {counts} strictly increasing, slope {growth.slope:.2f} in [1.5,2.5]; "
            "exact = brute force for all 1..4-input functions",
            elapsed,
        )

    def test_04_complexity_values(self):
        t0 = time.time()
        for coeffs in ([1, 1], [2, -1], [3, -2], [1, 2]):
            assert complexity_search(coeffs, compute_difficulty=False).complexity == 1
        assert complexity_search([2, -1, 1], compute_difficulty=False).complexity == 2
        assert complexity_search([4, -6, 4, -1], compute_difficulty=False).complexity == 3
        _announce(
            "complexity values",
            "binary rules -> 1, (2,-1,1) -> 2, (4,-6,4,-1) -> 3 (exact integers)",
            time.time() - t0,
        )

    def test_05_metric_conformance(self):
        # number-level fixture: one wrong cell of l*s = 32
        ds = generate_dataset("fib-number", "train", 1, SEED)
        preds = {0: list(ds.instances[0].target)}
        assert len(preds[0]) == 32
        preds[0][7] = (preds[0][7] + 1) % 10
        report = error_rate(preds, ds)
        assert report.total == 32 and report.error_rate == Fraction(1, 32)

        # digit-level fixture: three wrong of s = 12
        ds = generate_dataset("fib", "train", 1, SEED)
        preds = {0: list(ds.instances[0].target)}
        for idx in (12, 17, 23):
            preds[0][idx] = (preds[0][idx] + 1) % 12
        report = error_rate(preds, ds)
        assert report.total == 12 and report.error_rate == Fraction(1, 4)
        _announce(
            "metric conformance",
            "denominators 32 (number-level 8x8x4) and 12 (digit-level); fixtures 1/32 and 1/4 exact",
        )

    def test_06_split_hygiene(self, tmp_path):
        t0 = time.time()
        for task in task_names():
            for split in ("train", "val"):
                path = tmp_path / f"{task}-{split}.jsonl"
                assert cli_main(["generate", "--task", task, "--split", split,
                                 "--count", "64", "--seed", str(SEED),
                                 "--out", str(path)]) == 0
                assert cli_main(["splitcheck", str(path)]) == 0, (task, split)

        # injected out-of-range instance must be detected
        path = tmp_path / "corrupt.jsonl"
        assert cli_main(["generate", "--task", "arith", "--split", "val",
                         "--count", "8", "--seed", str(SEED), "--out", str(path)]) == 0
        lines = path.read_text().splitlines()
        rec = json.loads(lines[4])
        rec["initial_terms"][0] = 1
        lines[4] = json.dumps(rec, separators=(",", ":"))
        path.write_text("\n".join(lines) + "\n")
        assert cli_main(["splitcheck", str(path)]) == 6
        _announce(
            "split hygiene",
            f"splitcheck clean on {len(task_names())} tasks x 2 splits; injected violation detected",
            time.time() - t0,
        )

    def test_07_determinism(self, tmp_path):
        t0 = time.time()
        for task in ("fib-number", "mix-number", "quaternary5-number", "fixdiff", "reverse"):
            a = tmp_path / "a.jsonl"
            b = tmp_path / "b.jsonl"
            args = ["generate", "--task", task, "--split", "train",
                    "--count", "256", "--seed", "777"]
            assert cli_main(args + ["--out", str(a)]) == 0
            assert cli_main(args + ["--out", str(b)]) == 0
            assert a.read_bytes() == b.read_bytes(), task
        _announce(
            "determinism",
            "repeated cmd_generate byte-identical across 5 representative tasks",
            time.time() - t0,
        )
