"""Live game sessions, the append-only log, and synthetic data generation.

A session walks a fixed task sequence: the player guesses or skips, then a
rating popup must resolve (a 1-10 rating or a dismissal) before the next
word is issued. Timing is measured server-side from word presentation to
guess/skip resolution. Every finalized record is appended to a JSONL log
together with the live difficulty score, so the log can be re-scored
offline and checked against what was shown at play time.
"""

from __future__ import annotations

import enum
import json
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputError, SessionStateError
from .model import DifficultyModel, GameplayRecord, IwdScore
from .words import WordTask

DAILY_TASK_COUNT = 4
MISSING_URD_RATE = 24 / 1344  # observed dismissal rate the simulator mirrors

MODES = ("full", "daily")


class SessionState(enum.Enum):
    AWAITING_GUESS = "awaiting_guess"
    AWAITING_RATING = "awaiting_rating"
    COMPLETE = "complete"


def select_tasks(tasks: Sequence[WordTask], mode: str, seed: int | None = None) -> list[WordTask]:
    """Full mode: the whole fixed sequence. Daily mode: a seeded sample of 4,
    presented in sequence order."""
    if mode == "full":
        return list(tasks)
    if mode == "daily":
        if len(tasks) < DAILY_TASK_COUNT:
            raise InputError(f"daily mode needs at least {DAILY_TASK_COUNT} tasks")
        rng = np.random.default_rng(int(time.strftime("%Y%m%d")) if seed is None else seed)
        picks = rng.choice(len(tasks), size=DAILY_TASK_COUNT, replace=False)
        return sorted((tasks[i] for i in picks), key=lambda t: t.position)
    raise InputError(f"unknown mode {mode!r}; expected one of {MODES}")


class GameSession:
    """State machine for one participant playing one task sequence."""

    def __init__(
        self,
        session_id: str,
        participant_id: str,
        tasks: Sequence[WordTask],
        model: DifficultyModel,
        sink: Callable[[dict], None] | None = None,
        clock: Callable[[], float] = time.monotonic,
        mode: str = "full",
    ):
        if not tasks:
            raise InputError("a session needs at least one task")
        self.session_id = session_id
        self.participant_id = participant_id
        self.mode = mode
        self.tasks = list(tasks)
        self.model = model
        self._sink = sink
        self._clock = clock
        self._cursor = 0
        self._guesses = 0
        self._was_skipped = False
        self._resolved_elapsed: float | None = None
        self._presented_at = clock()
        self.state = SessionState.AWAITING_GUESS
        self.records: list[dict] = []

    # -- views ---------------------------------------------------------------

    def current_task(self) -> WordTask:
        if self.state is SessionState.COMPLETE:
            raise SessionStateError("session is complete; no current task")
        return self.tasks[self._cursor]

    @property
    def position(self) -> int:
        """1-based position of the current task within this session."""
        return self._cursor + 1

    @property
    def guesses_so_far(self) -> int:
        return self._guesses

    # -- actions ---------------------------------------------------------------

    def submit_guess(self, text: str) -> bool:
        if self.state is not SessionState.AWAITING_GUESS:
            raise SessionStateError(f"cannot guess while {self.state.value}")
        if not isinstance(text, str) or not text.strip():
            raise InputError("guess must be a non-empty string")
        self._guesses += 1
        correct = text.strip().lower() == self.current_task().word
        if correct:
            self._resolved_elapsed = self._clock() - self._presented_at
            self.state = SessionState.AWAITING_RATING
        return correct

    def submit_skip(self) -> None:
        if self.state is not SessionState.AWAITING_GUESS:
            raise SessionStateError(f"cannot skip while {self.state.value}")
        self._was_skipped = True
        self._resolved_elapsed = self._clock() - self._presented_at
        self.state = SessionState.AWAITING_RATING

    def submit_rating(self, urd: int | None) -> dict:
        """Finalize the current task with a rating (None = dismissed popup)."""
        if self.state is not SessionState.AWAITING_RATING:
            raise SessionStateError(f"cannot rate while {self.state.value}")
        if urd is not None and (isinstance(urd, bool) or not isinstance(urd, int) or not 1 <= urd <= 10):
            raise InputError(f"urd must be an integer in 1..10 or absent, got {urd!r}")
        task = self.current_task()
        record = GameplayRecord(
            participant_id=self.participant_id,
            word=task.word,
            scramble=task.scramble,
            time_taken=float(self._resolved_elapsed),
            num_guesses=self._guesses,
            was_skipped=self._was_skipped,
            urd=urd,
            presentation_index=self.position,
        )
        score = self.model.score_record(record)
        line = log_line(record, score, session_id=self.session_id, task_id=task.task_id,
                        model_version=self.model.version)
        self.records.append(line)
        if self._sink is not None:
            self._sink(line)

        self._cursor += 1
        self._guesses = 0
        self._was_skipped = False
        self._resolved_elapsed = None
        if self._cursor >= len(self.tasks):
            self.state = SessionState.COMPLETE
        else:
            self._presented_at = self._clock()
            self.state = SessionState.AWAITING_GUESS
        return line

    def summary(self) -> dict:
        return {
            "session_id": self.session_id,
            "participant_id": self.participant_id,
            "mode": self.mode,
            "state": self.state.value,
            "task_count": len(self.tasks),
            "records": list(self.records),
        }


def log_line(record: GameplayRecord, score: IwdScore, session_id: str, task_id: str,
             model_version: str) -> dict:
    d = record.to_json_dict()
    d.update(
        {
            "session_id": session_id,
            "task_id": task_id,
            "iwd_crisp": score.iwd,
            "iwd_category": score.category.label,
            "model_version": model_version,
        }
    )
    return d


# ---------------------------------------------------------------------------
# Persistence


class JsonlLog:
    """Append-only JSONL file; one dict per line, flushed per append."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.path.parent.mkdir(parents=True, exist_ok=True)

    def append(self, line: dict) -> None:
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(line, sort_keys=True) + "\n")

    def read_all(self) -> list[dict]:
        if not self.path.exists():
            return []
        with open(self.path, encoding="utf-8") as fh:
            return [json.loads(line) for line in fh if line.strip()]


def write_records_jsonl(records: Iterable[GameplayRecord], path: str | Path) -> int:
    n = 0
    with open(path, "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec.to_json_dict(), sort_keys=True) + "\n")
            n += 1
    return n


def read_records_jsonl(path: str | Path) -> list[GameplayRecord]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                records.append(GameplayRecord.from_json_dict(json.loads(line)))
    return records


@dataclass(frozen=True)
class ReplayMismatch:
    line_number: int
    stored_category: str
    recomputed_category: str
    stored_crisp: float
    recomputed_crisp: float


def rescore_log(path: str | Path, model: DifficultyModel) -> list[ReplayMismatch]:
    """Re-score a session log offline; returns every line whose recomputed
    category disagrees with what was shown live. Empty list = log replays
    cleanly."""
    mismatches = []
    for i, line in enumerate(JsonlLog(path).read_all(), start=1):
        record = GameplayRecord.from_json_dict(line)
        score = model.score_record(record)
        if score.category.label != line["iwd_category"]:
            mismatches.append(
                ReplayMismatch(
                    line_number=i,
                    stored_category=line["iwd_category"],
                    recomputed_category=score.category.label,
                    stored_crisp=float(line["iwd_crisp"]),
                    recomputed_crisp=score.iwd,
                )
            )
    return mismatches


# ---------------------------------------------------------------------------
# Synthetic data


@dataclass(frozen=True)
class AbilityModel:
    """Latent skill distribution for simulated participants."""

    mean: float = 0.55
    sd: float = 0.2


def task_complexity(task: WordTask) -> float:
    """Static difficulty proxy in [0, 1] from scramble degree and length."""
    from .scramble import degree_of_scramble

    s = degree_of_scramble(task.word, task.scramble)
    length_part = (len(task.word) - 1) / 14.0
    return float(np.clip(0.55 * s + 0.45 * length_part, 0.0, 1.0))


def skip_probability(ability: float, complexity: float) -> float:
    """Monotone in (complexity - ability); tends to 0 as ability grows."""
    gap = complexity - ability
    return float(1.0 / (1.0 + np.exp(-5.0 * (gap - 0.45))))


def simulate_participants(
    n: int,
    seed: int,
    tasks: Sequence[WordTask],
    ability: AbilityModel = AbilityModel(),
) -> list[GameplayRecord]:
    """Generate n synthetic participants playing the full task sequence.

    Each participant has a latent ability; times, guess counts, skip
    probability and ratings all grow with (task complexity - ability) plus
    noise, and a small fraction of ratings goes missing. Deterministic for
    a given seed: one generator stream, consumed participant-by-participant
    in task order.
    """
    if n < 1:
        raise InputError("need at least one participant")
    if not tasks:
        raise InputError("need a non-empty task list")
    rng = np.random.default_rng(seed)
    complexities = [task_complexity(t) for t in tasks]
    abilities = np.clip(rng.normal(ability.mean, ability.sd, size=n), 0.05, 0.95)
    records = []
    for p in range(n):
        pid = f"sim{p + 1:03d}"
        for idx, (task, complexity) in enumerate(zip(tasks, complexities), start=1):
            gap = complexity - abilities[p]
            skipped = rng.random() < skip_probability(abilities[p], complexity)
            time_taken = float(np.clip(12.0 * np.exp(1.8 * gap + rng.normal(0.0, 0.35)), 1.0, 300.0))
            if skipped:
                guesses = int(rng.poisson(max(0.0, 1.5 + 2.5 * gap)))
            else:
                guesses = 1 + int(rng.poisson(np.exp(0.9 * gap + 0.1)))
            latent = 5.5 + 5.2 * gap + (1.0 if skipped else 0.0) + rng.normal(0.0, 1.1)
            urd: int | None = int(np.clip(round(latent), 1, 10))
            if rng.random() < MISSING_URD_RATE:
                urd = None
            records.append(
                GameplayRecord(
                    participant_id=pid,
                    word=task.word,
                    scramble=task.scramble,
                    time_taken=time_taken,
                    num_guesses=guesses,
                    was_skipped=bool(skipped),
                    urd=urd,
                    presentation_index=idx,
                )
            )
    return records
