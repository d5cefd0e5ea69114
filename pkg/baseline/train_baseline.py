#!/usr/bin/env python3
"""Train a small recurrent baseline on a digit-level task.

The script is a consumer of the task toolkit: it talks to it only
through the ``numseq`` CLI and its JSON-lines file formats.  It
generates a training stream, a fixed validation set, and a train-
distribution evaluation set; trains a GRU (128 hidden units, pinned in
config.json along with the optimizer, which the toolkit does not
specify); and writes spec-conformant prediction files that ``numseq
evaluate`` can score.

Number-level tasks are refused: this adapter models token streams only.

Outputs in --out:
  val.jsonl / traineval.jsonl              datasets (from numseq generate)
  val_predictions.jsonl                    PredictionFile for the validation set
  traineval_predictions.jsonl              PredictionFile for the train-range set
  trainrun.json                            budget, error history, final rates
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
from dataclasses import dataclass, field
from pathlib import Path

import torch
from torch import nn

CONFIG_PATH = Path(__file__).parent / "config.json"


# ---------------------------------------------------------------------------
# JSON-lines plumbing (the toolkit's file formats).
# ---------------------------------------------------------------------------


def read_jsonl(path: Path) -> tuple[dict, list[dict]]:
    lines = [ln for ln in path.read_text(encoding="utf-8").splitlines() if ln.strip()]
    return json.loads(lines[0]), [json.loads(ln) for ln in lines[1:]]


def stream_batches(path: Path, batch_size: int):
    """Yield (header, None) first, then (None, batch) chunks lazily."""
    with open(path, "r", encoding="utf-8") as fh:
        header = json.loads(fh.readline())
        yield header, None
        batch: list[dict] = []
        for line in fh:
            if not line.strip():
                continue
            batch.append(json.loads(line))
            if len(batch) == batch_size:
                yield None, batch
                batch = []


def write_predictions(path: Path, dataset_ref: str, rows: dict[int, list[int]]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(json.dumps(
            {"format_version": 1, "kind": "predictions",
             "dataset_ref": dataset_ref, "mode": "tokens"},
            separators=(",", ":")) + "\n")
        for pid in sorted(rows):
            fh.write(json.dumps({"id": pid, "values": rows[pid]},
                                separators=(",", ":")) + "\n")


def numseq_cmd() -> list[str]:
    return [sys.executable, "-m", "numseq.cli"]


def generate(task: str, split: str, count: int, seed: int, out: Path) -> None:
    cmd = numseq_cmd() + ["generate", "--task", task, "--split", split,
                          "--count", str(count), "--seed", str(seed), "--out", str(out)]
    subprocess.run(cmd, check=True)


def dataset_ref(header: dict) -> str:
    return f"{header['task']}:{header['split']['role']}:{header['master_seed']}:{header['count']}"


# ---------------------------------------------------------------------------
# Model.
# ---------------------------------------------------------------------------


class RecurrentTagger(nn.Module):
    """Per-step token classifier: embed -> GRU/LSTM -> linear.

    Tying the output head to the embedding makes copying a symbol a
    representation-level identity, which is what the continuation
    region mostly demands; it noticeably improves value generalization.
    """

    def __init__(self, vocab: int, hidden: int, layers: int,
                 dropout: float = 0.0, cell: str = "gru", tie: bool = False,
                 freeze_embedding: bool = False):
        super().__init__()
        self.embed = nn.Embedding(vocab, hidden)
        if freeze_embedding:
            # orthogonal symbol directions, fixed: copying cannot lean on
            # value-correlated embedding drift
            with torch.no_grad():
                q, _ = torch.linalg.qr(torch.randn(hidden, hidden))
                self.embed.weight.copy_(q[:vocab])
            self.embed.weight.requires_grad_(False)
        self.drop = nn.Dropout(dropout)
        rnn_cls = nn.LSTM if cell == "lstm" else nn.GRU
        self.rnn = rnn_cls(
            hidden, hidden, num_layers=layers, batch_first=True,
            dropout=dropout if layers > 1 else 0.0,
        )
        self.head = nn.Linear(hidden, vocab)
        if tie:
            self.head.weight = self.embed.weight

    def forward(self, tokens: torch.Tensor) -> torch.Tensor:
        h, _ = self.rnn(self.drop(self.embed(tokens)))
        return self.head(self.drop(h))


# ---------------------------------------------------------------------------
# Batching (fixed-length numeric tasks and variable-length reverse).
# ---------------------------------------------------------------------------


def reading_steps(rec: dict, header: dict) -> int:
    """Steps before the answer phase: n for numeric tasks, m for reverse."""
    n_total = len(rec["target"])
    s = header["s"] if header["s"] is not None else n_total // 2
    return n_total - s


def model_inputs(rec: dict, header: dict, feedback: bool) -> list[int]:
    """Token sequence fed to the model.

    Plain mode feeds the task input as-is (delimiters during the answer
    phase).  Feedback mode is the language-model convention: during the
    answer phase the previous target token is the input (teacher
    forcing; prediction uses the model's own previous output instead).
    """
    if not feedback:
        return rec["input"]
    n = reading_steps(rec, header)
    return rec["input"][:n] + rec["target"][n - 1 : len(rec["target"]) - 1]


def pad_batch(
    instances: list[dict], pad_token: int, header: dict | None = None,
    feedback: bool = False,
) -> tuple[torch.Tensor, torch.Tensor, torch.Tensor]:
    """(inputs, targets, mask); positions beyond an instance are masked out."""
    width = max(len(r["input"]) for r in instances)
    x = torch.full((len(instances), width), pad_token, dtype=torch.long)
    y = torch.full((len(instances), width), pad_token, dtype=torch.long)
    mask = torch.zeros((len(instances), width), dtype=torch.bool)
    for i, rec in enumerate(instances):
        n = len(rec["input"])
        fed = model_inputs(rec, header, feedback) if feedback else rec["input"]
        x[i, :n] = torch.tensor(fed, dtype=torch.long)
        y[i, :n] = torch.tensor(rec["target"], dtype=torch.long)
        mask[i, :n] = True
    return x, y, mask


def scored_mask(instances: list[dict], header: dict, width: int) -> torch.Tensor:
    """True on the continuation tokens (the region the harness counts)."""
    mask = torch.zeros((len(instances), width), dtype=torch.bool)
    for i, rec in enumerate(instances):
        n_total = len(rec["target"])
        s = header["s"] if header["s"] is not None else n_total // 2
        mask[i, n_total - s : n_total] = True
    return mask


@torch.no_grad()
def predict_tokens(model: nn.Module, instances: list[dict], pad_token: int,
                   header: dict, feedback: bool = False,
                   batch_size: int = 256) -> dict[int, list[int]]:
    model.eval()
    out: dict[int, list[int]] = {}
    for i in range(0, len(instances), batch_size):
        chunk = instances[i : i + batch_size]
        if not feedback:
            x, _, _ = pad_batch(chunk, pad_token)
            picks = model(x).argmax(dim=2)
        else:
            picks = _predict_with_feedback(model, chunk, pad_token, header)
        for rec, row in zip(chunk, picks):
            out[rec["id"]] = row[: len(rec["input"])].tolist()
    return out


@torch.no_grad()
def _predict_with_feedback(model: nn.Module, chunk: list[dict], pad_token: int,
                           header: dict) -> torch.Tensor:
    """Stepwise decoding: the answer phase consumes the model's own
    previous prediction instead of the dataset's delimiter inputs."""
    width = max(len(r["input"]) for r in chunk)
    x_read, _, _ = pad_batch(chunk, pad_token)
    n_vec = torch.tensor([reading_steps(r, header) for r in chunk])
    preds = torch.full((len(chunk), width), pad_token, dtype=torch.long)
    hidden = None
    prev = x_read[:, 0]
    for t in range(width):
        u = x_read[:, t] if t == 0 else torch.where(torch.tensor(t) < n_vec, x_read[:, t], prev)
        step, hidden = model.rnn(model.embed(u).unsqueeze(1), hidden)
        prev = model.head(step.squeeze(1)).argmax(dim=1)
        preds[:, t] = prev
    return preds


def scored_error(model: nn.Module, instances: list[dict], header: dict, pad_token: int,
                 feedback: bool = False) -> float:
    """Continuation-region error rate, the number the harness reports."""
    preds = predict_tokens(model, instances, pad_token, header, feedback)
    wrong = total = 0
    for rec in instances:
        n_total = len(rec["target"])
        s = header["s"] if header["s"] is not None else n_total // 2
        for idx in range(n_total - s, n_total):
            total += 1
            if preds[rec["id"]][idx] != rec["target"][idx]:
                wrong += 1
    return wrong / total if total else 0.0


# ---------------------------------------------------------------------------
# Training run.
# ---------------------------------------------------------------------------


@dataclass
class TrainRun:
    task: str
    budget: int
    examples_seen: int = 0
    history: list[tuple[int, float]] = field(default_factory=list)
    final_val_error: float | None = None
    final_train_eval_error: float | None = None

    def to_json(self) -> dict:
        return {
            "task": self.task,
            "budget": self.budget,
            "examples_seen": self.examples_seen,
            "history": [[n, r] for n, r in self.history],
            "final_val_error": self.final_val_error,
            "final_train_eval_error": self.final_train_eval_error,
        }


def train_baseline(
    task: str, budget: int, out_dir: Path, data_seed: int = 90,
    config_path: Path = CONFIG_PATH,
) -> TrainRun:
    """Stream `budget` training examples through the model; write outputs."""
    config = json.loads(Path(config_path).read_text())
    out_dir.mkdir(parents=True, exist_ok=True)

    train_path = out_dir / "train.jsonl"
    val_path = out_dir / "val.jsonl"
    traineval_path = out_dir / "traineval.jsonl"
    generate(task, "train", budget, data_seed, train_path)
    generate(task, "val", config["val_count"], data_seed + 1, val_path)
    generate(task, "train", config["train_eval_count"], data_seed + 2, traineval_path)

    batches = stream_batches(train_path, config["batch_size"])
    header, _ = next(batches)
    if header["level"] != "digit":
        raise SystemExit(f"baseline adapter handles digit-level tasks only, not {task!r}")
    val_header, val_rows = read_jsonl(val_path)
    te_header, te_rows = read_jsonl(traineval_path)

    vocab = header["base"] + 2
    pad_token = header["base"] + 1  # padding reuses the delimiter code; loss is masked
    torch.manual_seed(config["torch_seed"])
    model = RecurrentTagger(
        vocab, config["hidden_units"], config["layers"],
        dropout=float(config.get("dropout", 0.0)),
        cell=config.get("cell", "gru"),
        tie=bool(config.get("tie_embedding", False)),
        freeze_embedding=bool(config.get("freeze_embedding", False)),
    )
    opt = torch.optim.Adam(
        (p for p in model.parameters() if p.requires_grad),
        lr=config["learning_rate"],
        weight_decay=float(config.get("weight_decay", 0.0)),
    )
    total_iterations = max(budget // config["batch_size"], 1)
    scheduler = None
    if config.get("lr_schedule") == "cosine":
        scheduler = torch.optim.lr_scheduler.CosineAnnealingLR(opt, T_max=total_iterations)
    if config.get("recurrent_init") == "orthogonal":
        for name, p in model.rnn.named_parameters():
            if "weight_hh" in name:
                for row in p.chunk(p.shape[0] // p.shape[1], dim=0):
                    nn.init.orthogonal_(row)
            elif "bias_hh" in name and isinstance(model.rnn, nn.LSTM):
                hidden = p.shape[0] // 4
                with torch.no_grad():
                    p[hidden : 2 * hidden].fill_(1.0)  # forget gate open
    loss_fn = nn.CrossEntropyLoss(reduction="none")
    continuation_weight = float(config.get("continuation_loss_weight", 1.0))
    leading_weight = float(config.get("leading_loss_weight", 1.0))
    feedback = bool(config.get("lm_feedback", False))

    ema_decay = float(config.get("ema_decay", 0.0))
    ema = None
    if ema_decay > 0:
        ema = torch.optim.swa_utils.AveragedModel(
            model, avg_fn=lambda avg, new, n: ema_decay * avg + (1 - ema_decay) * new
        )

    def eval_model() -> nn.Module:
        return ema.module if ema is not None else model

    run = TrainRun(task=task, budget=budget)
    iteration = 0
    for _, batch in batches:
        x, y, mask = pad_batch(batch, pad_token, header, feedback=feedback)
        weights = mask.float()
        if continuation_weight != 1.0 or leading_weight != 1.0:
            scored = scored_mask(batch, header, x.shape[1]).float()
            weights = weights * (
                continuation_weight * scored + leading_weight * (1.0 - scored)
            )
        model.train()
        logits = model(x)
        loss = loss_fn(logits.transpose(1, 2), y)
        loss = (loss * weights).sum() / weights.sum()
        opt.zero_grad()
        loss.backward()
        nn.utils.clip_grad_norm_(model.parameters(), config["grad_clip"])
        opt.step()
        if scheduler is not None:
            scheduler.step()
        if ema is not None:
            ema.update_parameters(model)

        iteration += 1
        run.examples_seen += len(batch)
        if iteration % config["val_every_iterations"] == 0:
            rate = scored_error(eval_model(), val_rows, val_header, pad_token, feedback)
            run.history.append((run.examples_seen, rate))

    run.final_val_error = scored_error(eval_model(), val_rows, val_header, pad_token, feedback)
    run.final_train_eval_error = scored_error(eval_model(), te_rows, te_header, pad_token, feedback)
    if not run.history or run.history[-1][0] != run.examples_seen:
        run.history.append((run.examples_seen, run.final_val_error))

    write_predictions(
        out_dir / "val_predictions.jsonl",
        dataset_ref(val_header),
        predict_tokens(eval_model(), val_rows, pad_token, val_header, feedback),
    )
    write_predictions(
        out_dir / "traineval_predictions.jsonl",
        dataset_ref(te_header),
        predict_tokens(eval_model(), te_rows, pad_token, te_header, feedback),
    )
    (out_dir / "trainrun.json").write_text(
        json.dumps(run.to_json(), indent=2) + "\n", encoding="utf-8"
    )
    train_path.unlink()  # the stream is large and fully consumed
    return run


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--task", required=True, help="digit-level numseq task name")
    parser.add_argument("--budget", type=int, default=200_000, help="training example count")
    parser.add_argument("--out", required=True, help="output directory")
    parser.add_argument("--data-seed", type=int, default=90)
    parser.add_argument("--config", default=str(CONFIG_PATH), help="hyperparameter file")
    args = parser.parse_args(argv)

    run = train_baseline(args.task, args.budget, Path(args.out), args.data_seed,
                         config_path=Path(args.config))
    print(f"task={run.task} examples={run.examples_seen} "
          f"val_error={run.final_val_error:.4f} train_eval_error={run.final_train_eval_error:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
