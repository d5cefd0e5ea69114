"""Full-budget trend reproduction (slow: several minutes per task).

Run with: pytest baseline -m slow -v -s
"""

import json
import subprocess
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from train_baseline import train_baseline

BUDGET = 200_000


def official_error(dataset: Path, predictions: Path) -> float:
    cmd = [sys.executable, "-m", "numseq.cli", "evaluate", str(dataset), str(predictions)]
    proc = subprocess.run(cmd, capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    report = json.loads(proc.stdout.strip().splitlines()[-1])
    return report["wrong"] / report["total"]


@pytest.mark.slow
def test_fixed_difference_converges(tmp_path):
    run = train_baseline("fixdiff", budget=BUDGET, out_dir=tmp_path / "fixdiff", data_seed=17)
    rate = official_error(tmp_path / "fixdiff" / "val.jsonl",
                          tmp_path / "fixdiff" / "val_predictions.jsonl")
    print(f"\n[SECONDARY] fixdiff: val error {rate:.4f} after {run.examples_seen} examples "
          f"(criterion < 0.10)")
    assert rate < 0.10


@pytest.mark.slow
def test_reverse_train_val_gap(tmp_path):
    run = train_baseline("reverse", budget=BUDGET, out_dir=tmp_path / "reverse", data_seed=17)
    val = official_error(tmp_path / "reverse" / "val.jsonl",
                         tmp_path / "reverse" / "val_predictions.jsonl")
    train = official_error(tmp_path / "reverse" / "traineval.jsonl",
                           tmp_path / "reverse" / "traineval_predictions.jsonl")
    print(f"\n[SECONDARY] reverse: train error {train:.4f} (criterion < 0.05), "
          f"val error at m=16 {val:.4f} (criterion > 0.20)")
    assert train < 0.05
    assert val > 0.20


@pytest.mark.slow
def test_fibonacci_fails(tmp_path):
    run = train_baseline("fib", budget=BUDGET, out_dir=tmp_path / "fib", data_seed=17)
    rate = official_error(tmp_path / "fib" / "val.jsonl",
                          tmp_path / "fib" / "val_predictions.jsonl")
    print(f"\n[SECONDARY] fibonacci: val error {rate:.4f} after {run.examples_seen} examples "
          f"(criterion > 0.50)")
    assert rate > 0.50
