"""Category mapping, confusion matrices, and the evaluation protocols.

Truth comes from the user's 1-10 rating mapped onto Easy/Medium/Hard;
predictions come from classifying the crisp model output. Records without
a rating are excluded from every protocol (they still get scored in live
play, they just cannot be graded).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .config import ModelConfig
from .errors import InputError
from .ga import GaSettings, run_ga
from .model import DifficultyCategory, DifficultyModel, GameplayRecord, classify_iwd

CLASSES = (DifficultyCategory.EASY, DifficultyCategory.MEDIUM, DifficultyCategory.HARD)

LOO_MODES = ("record", "participant", "word")


def map_urd(urd: int) -> DifficultyCategory:
    """User rating to category: 1-4 Easy, 5 Medium, 6-10 Hard."""
    if isinstance(urd, bool) or not isinstance(urd, (int, np.integer)):
        raise InputError(f"urd must be an integer, got {urd!r}")
    urd = int(urd)
    if not 1 <= urd <= 10:
        raise InputError(f"urd must be in 1..10, got {urd}")
    if urd <= 4:
        return DifficultyCategory.EASY
    if urd == 5:
        return DifficultyCategory.MEDIUM
    return DifficultyCategory.HARD


@dataclass(frozen=True)
class ConfusionMatrix:
    """3x3 counts; rows are true categories, columns are predictions."""

    counts: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if len(self.counts) != 3 or any(len(row) != 3 for row in self.counts):
            raise InputError("confusion matrix must be 3x3")
        if any(c < 0 for row in self.counts for c in row):
            raise InputError("confusion matrix counts must be >= 0")

    @staticmethod
    def from_pairs(
        pairs: Iterable[tuple[DifficultyCategory, DifficultyCategory]]
    ) -> "ConfusionMatrix":
        counts = np.zeros((3, 3), dtype=np.int64)
        for true, pred in pairs:
            counts[true - 1, pred - 1] += 1
        return ConfusionMatrix(tuple(tuple(int(c) for c in row) for row in counts))

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)

    def row(self, category: DifficultyCategory) -> tuple[int, int, int]:
        return self.counts[category - 1]

    def accuracy(self) -> float:
        total = self.total
        if total == 0:
            return 0.0
        return sum(self.counts[i][i] for i in range(3)) / total

    def __add__(self, other: "ConfusionMatrix") -> "ConfusionMatrix":
        return ConfusionMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(self.counts, other.counts)
            )
        )


@dataclass(frozen=True)
class PrfResult:
    precision: float
    recall: float
    f_measure: float
    degenerate: bool


def prf(cm: ConfusionMatrix, category: DifficultyCategory) -> PrfResult:
    """Precision/recall/F for one class; zero denominators give 0, flagged."""
    i = category - 1
    tp = cm.counts[i][i]
    col = sum(cm.counts[r][i] for r in range(3))
    row = sum(cm.counts[i])
    degenerate = False
    if col > 0:
        precision = tp / col
    else:
        precision, degenerate = 0.0, True
    if row > 0:
        recall = tp / row
    else:
        recall, degenerate = 0.0, True
    if precision + recall > 0:
        f_measure = 2.0 * precision * recall / (precision + recall)
    else:
        f_measure, degenerate = 0.0, True
    return PrfResult(precision, recall, f_measure, degenerate)


@dataclass(frozen=True)
class EvaluationReport:
    confusion: ConfusionMatrix
    per_class: dict[DifficultyCategory, PrfResult]
    n_scored: int
    n_unrated: int

    @staticmethod
    def from_confusion(cm: ConfusionMatrix, n_unrated: int = 0) -> "EvaluationReport":
        return EvaluationReport(
            confusion=cm,
            per_class={c: prf(cm, c) for c in CLASSES},
            n_scored=cm.total,
            n_unrated=n_unrated,
        )


def _rated(records: Sequence[GameplayRecord]) -> list[GameplayRecord]:
    return [r for r in records if r.urd is not None]


def resubstitution(model: DifficultyModel, records: Sequence[GameplayRecord]) -> EvaluationReport:
    """Score every rated record with the given model and grade it in place."""
    rated = _rated(records)
    if not rated:
        raise InputError("evaluation needs at least one rated record")
    scores = model.score_records(rated)
    pairs = [(map_urd(r.urd), s.category) for r, s in zip(rated, scores)]
    return EvaluationReport.from_confusion(
        ConfusionMatrix.from_pairs(pairs), n_unrated=len(records) - len(rated)
    )


def _fold_key(mode: str) -> Callable[[GameplayRecord], object]:
    if mode == "record":
        return lambda r: id(r)
    if mode == "participant":
        return lambda r: r.participant_id
    if mode == "word":
        return lambda r: (r.word, r.scramble)
    raise InputError(f"unknown leave-one-out mode {mode!r}; expected one of {LOO_MODES}")


def leave_one_out(
    template: ModelConfig,
    records: Sequence[GameplayRecord],
    mode: str = "participant",
    train: GaSettings | None = None,
) -> EvaluationReport:
    """Hold out one unit at a time, fit on the rest, grade the held-out records.

    With ``train=None`` the heuristic template is used as-is (no fitting), in
    which case the result is identical to resubstitution. Passing GaSettings
    runs a full tuning pass per fold.
    """
    rated = _rated(records)
    if not rated:
        raise InputError("evaluation needs at least one rated record")
    key = _fold_key(mode)
    folds: dict[object, list[GameplayRecord]] = {}
    for r in rated:
        folds.setdefault(key(r), []).append(r)
    if len(folds) < 2:
        raise InputError(f"leave-one-out needs at least 2 {mode} folds, got {len(folds)}")

    heuristic_model = DifficultyModel(template)
    total = ConfusionMatrix(((0, 0, 0), (0, 0, 0), (0, 0, 0)))
    for unit, held_out in folds.items():
        if train is None:
            model = heuristic_model
        else:
            remainder = [r for r in rated if key(r) != unit]
            model = DifficultyModel(run_ga(train, template, remainder).best_config)
        scores = model.score_records(held_out)
        pairs = [(map_urd(r.urd), s.category) for r, s in zip(held_out, scores)]
        total = total + ConfusionMatrix.from_pairs(pairs)
    return EvaluationReport.from_confusion(total, n_unrated=len(records) - len(rated))


# ---------------------------------------------------------------------------
# Report rendering: Resubstitution and Leave-One-Out blocks, one row per
# class, Precision/Recall/F columns.


def render_report_text(blocks: dict[str, EvaluationReport]) -> str:
    out = io.StringIO()
    for title, report in blocks.items():
        out.write(f"{title}\n")
        out.write(f"{'':<10}{'Precision':>10}{'Recall':>10}{'F Measure':>10}\n")
        for cls in CLASSES:
            r = report.per_class[cls]
            flag = " *" if r.degenerate else ""
            out.write(
                f"{cls.label.capitalize():<10}{r.precision:>10.2f}{r.recall:>10.2f}{r.f_measure:>10.2f}{flag}\n"
            )
        out.write(
            f"records: {report.n_scored} scored, {report.n_unrated} unrated excluded; "
            f"accuracy {report.confusion.accuracy():.3f}\n\n"
        )
    return out.getvalue().rstrip() + "\n"


def render_report_csv(blocks: dict[str, EvaluationReport]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["protocol", "class", "precision", "recall", "f_measure", "degenerate"])
    for title, report in blocks.items():
        for cls in CLASSES:
            r = report.per_class[cls]
            writer.writerow(
                [title, cls.label, repr(r.precision), repr(r.recall), repr(r.f_measure), r.degenerate]
            )
    return out.getvalue()
