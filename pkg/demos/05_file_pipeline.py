"""The full file pipeline: generate -> oracle -> evaluate -> splitcheck.
=====================================================================

Everything on disk is JSON lines: a header line, then one instance (or
prediction) per line.  Datasets are byte-reproducible for a fixed seed,
so this script can assert equality of two generations.
"""

import json
import tempfile
from pathlib import Path

from numseq.cli import main

workdir = Path(tempfile.mkdtemp(prefix="numseq-demo-"))
dataset = workdir / "geom-val.jsonl"
predictions = workdir / "geom-val.pred.jsonl"

# ---------------------------------------------------------------------------
# Generate a validation dataset (exit code 0 on success).
# ---------------------------------------------------------------------------

assert main(["generate", "--task", "geom", "--split", "val",
             "--count", "256", "--seed", "11", "--out", str(dataset)]) == 0
lines = dataset.read_text().splitlines()
print("header:  ", lines[0])
print("instance:", lines[1])

# Determinism: generating again yields identical bytes.
again = workdir / "again.jsonl"
assert main(["generate", "--task", "geom", "--split", "val",
             "--count", "256", "--seed", "11", "--out", str(again)]) == 0
assert dataset.read_bytes() == again.read_bytes()
print("\nsecond generation is byte-identical.")

# ---------------------------------------------------------------------------
# Reference-machine predictions, then scoring.
# ---------------------------------------------------------------------------

assert main(["oracle", str(dataset), "--out", str(predictions)]) == 0
print("\nevaluate output:")
assert main(["evaluate", str(dataset), str(predictions)]) == 0

# ---------------------------------------------------------------------------
# Split hygiene: clean file passes, a corrupted term is caught (exit 6).
# ---------------------------------------------------------------------------

assert main(["splitcheck", str(dataset)]) == 0
bad = workdir / "bad.jsonl"
rows = dataset.read_text().splitlines()
rec = json.loads(rows[1])
rec["initial_terms"] = [5]  # outside the validation range
rows[1] = json.dumps(rec, separators=(",", ":"))
bad.write_text("\n".join(rows) + "\n")
print("\nsplitcheck on a corrupted file:")
code = main(["splitcheck", str(bad)])
print("exit code:", code)
assert code == 6
