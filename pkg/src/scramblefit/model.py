"""The two-stage difficulty pipeline.

Stage 1 turns gameplay features into two intermediate crisp values: user
effort (ue, from guesses and time) and word complexity (cow, from length and
scramble degree). Stage 2 combines those with the skip flag into a crisp
0-10 Individualized Word Difficulty (iwd), categorized against the same
cut points used for user ratings.

Batch scoring and per-record scoring share the inference kernel, so a
record scored alone is bit-identical to the same record inside a batch.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .config import ModelConfig
from .errors import ConfigError, InputError
from .scramble import degree_of_scramble

# Universe bounds for feature clamping; inference clamps again against the
# loaded config, so these only need to match the shipped defaults.
GUESSES_RANGE = (0.0, 10.0)
TIME_RANGE = (0.0, 60.0)
LENGTH_RANGE = (1.0, 15.0)
SCRAMBLE_RANGE = (0.0, 1.0)

EASY_BELOW = 4.5
HARD_ABOVE = 5.5


class DifficultyCategory(enum.IntEnum):
    EASY = 1
    MEDIUM = 2
    HARD = 3

    @property
    def label(self) -> str:
        return self.name.lower()

    @classmethod
    def from_label(cls, label: str) -> "DifficultyCategory":
        try:
            return cls[label.upper()]
        except KeyError:
            raise InputError(f"unknown difficulty category {label!r}") from None


def classify_iwd(crisp: float) -> DifficultyCategory:
    """Categorize a crisp 0-10 difficulty with cut points at 4.5 and 5.5.

    The cut points sit midway between the integer rating bands 1-4, 5 and
    6-10, so integer crisp values land in the same category as the matching
    user rating.
    """
    crisp = float(crisp)
    if crisp < EASY_BELOW:
        return DifficultyCategory.EASY
    if crisp <= HARD_ABOVE:
        return DifficultyCategory.MEDIUM
    return DifficultyCategory.HARD


@dataclass(frozen=True)
class GameplayRecord:
    """One resolved word task: outcome, timing, and the optional user rating."""

    participant_id: str
    word: str
    scramble: str
    time_taken: float
    num_guesses: int
    was_skipped: bool
    urd: int | None
    presentation_index: int

    def __post_init__(self):
        if self.time_taken < 0:
            raise InputError(f"time_taken must be >= 0, got {self.time_taken}")
        if self.num_guesses < 0:
            raise InputError(f"num_guesses must be >= 0, got {self.num_guesses}")
        if not self.was_skipped and self.num_guesses < 1:
            raise InputError("a solved word implies at least one guess")
        if self.urd is not None and not (isinstance(self.urd, int) and 1 <= self.urd <= 10):
            raise InputError(f"urd must be an integer in 1..10 or absent, got {self.urd!r}")

    def to_json_dict(self) -> dict:
        return {
            "participant_id": self.participant_id,
            "word": self.word,
            "scramble": self.scramble,
            "time_taken": self.time_taken,
            "num_guesses": self.num_guesses,
            "was_skipped": self.was_skipped,
            "urd": self.urd,
            "presentation_index": self.presentation_index,
        }

    @staticmethod
    def from_json_dict(d: dict) -> "GameplayRecord":
        try:
            return GameplayRecord(
                participant_id=d["participant_id"],
                word=d["word"],
                scramble=d["scramble"],
                time_taken=float(d["time_taken"]),
                num_guesses=int(d["num_guesses"]),
                was_skipped=bool(d["was_skipped"]),
                urd=None if d.get("urd") is None else int(d["urd"]),
                presentation_index=int(d.get("presentation_index", 0)),
            )
        except KeyError as exc:
            raise InputError(f"gameplay record missing field {exc}") from exc


@dataclass(frozen=True)
class FeatureVector:
    """Model inputs for one record, clamped to the variable universes."""

    time_taken: float
    num_guesses: float
    word_length: float
    degree_of_scramble: float
    was_skipped: float


def extract_features(rec: GameplayRecord) -> FeatureVector:
    return FeatureVector(
        time_taken=float(np.clip(rec.time_taken, *TIME_RANGE)),
        num_guesses=float(np.clip(rec.num_guesses, *GUESSES_RANGE)),
        word_length=float(np.clip(len(rec.word), *LENGTH_RANGE)),
        degree_of_scramble=float(np.clip(degree_of_scramble(rec.word, rec.scramble), *SCRAMBLE_RANGE)),
        was_skipped=1.0 if rec.was_skipped else 0.0,
    )


def features_from_records(records: Sequence[GameplayRecord]) -> dict[str, np.ndarray]:
    """Column arrays for batch scoring, one entry per record in order."""
    fvs = [extract_features(r) for r in records]
    return {
        "time_taken": np.array([f.time_taken for f in fvs]),
        "num_guesses": np.array([f.num_guesses for f in fvs]),
        "word_length": np.array([f.word_length for f in fvs]),
        "degree_of_scramble": np.array([f.degree_of_scramble for f in fvs]),
        "was_skipped": np.array([f.was_skipped for f in fvs]),
    }


@dataclass(frozen=True)
class IwdScore:
    ue: float
    cow: float
    iwd: float
    category: DifficultyCategory
    degenerate: bool


class DifficultyModel:
    """Loaded, immutable scoring pipeline built from a ModelConfig."""

    def __init__(self, config: ModelConfig):
        self.config = config
        nodes = config.build_nodes()
        for required in ("ue", "cow", "iwd"):
            if required not in nodes:
                raise ConfigError(f"model config must define node {required!r}")
        self._ue = nodes["ue"]
        self._cow = nodes["cow"]
        self._iwd = nodes["iwd"]

    @property
    def version(self) -> str:
        return self.config.version

    @staticmethod
    def default() -> "DifficultyModel":
        return DifficultyModel(ModelConfig.default())

    @staticmethod
    def load(path: str | Path) -> "DifficultyModel":
        return DifficultyModel(ModelConfig.load(path))

    # -- stage-by-stage crisp outputs ---------------------------------------

    def compute_ue(self, num_guesses: float, time_taken: float) -> float:
        crisp, _ = self._ue.batch_crisp(
            {"num_guesses": np.array([float(num_guesses)]), "time_taken": np.array([float(time_taken)])}
        )
        return float(crisp[0])

    def compute_cow(self, word_length: float, degree: float) -> float:
        crisp, _ = self._cow.batch_crisp(
            {"word_length": np.array([float(word_length)]), "degree_of_scramble": np.array([float(degree)])}
        )
        return float(crisp[0])

    def compute_iwd(self, ue: float, cow: float, was_skipped: float) -> float:
        crisp, _ = self._iwd.batch_crisp(
            {
                "ue": np.array([float(ue)]),
                "cow": np.array([float(cow)]),
                "was_skipped": np.array([float(was_skipped)]),
            }
        )
        return float(crisp[0])

    # -- full pipeline -------------------------------------------------------

    def batch_score(self, features: dict[str, np.ndarray]) -> dict[str, np.ndarray]:
        """Score feature columns; returns ue, cow, iwd arrays plus flags."""
        ue, ue_deg = self._ue.batch_crisp(
            {"num_guesses": features["num_guesses"], "time_taken": features["time_taken"]}
        )
        cow, cow_deg = self._cow.batch_crisp(
            {"word_length": features["word_length"], "degree_of_scramble": features["degree_of_scramble"]}
        )
        iwd, iwd_deg = self._iwd.batch_crisp(
            {"ue": ue, "cow": cow, "was_skipped": features["was_skipped"]}
        )
        return {
            "ue": ue,
            "cow": cow,
            "iwd": iwd,
            "degenerate": ue_deg | cow_deg | iwd_deg,
        }

    def score_features(self, fv: FeatureVector) -> IwdScore:
        cols = {
            "time_taken": np.array([fv.time_taken]),
            "num_guesses": np.array([fv.num_guesses]),
            "word_length": np.array([fv.word_length]),
            "degree_of_scramble": np.array([fv.degree_of_scramble]),
            "was_skipped": np.array([fv.was_skipped]),
        }
        out = self.batch_score(cols)
        iwd = float(out["iwd"][0])
        return IwdScore(
            ue=float(out["ue"][0]),
            cow=float(out["cow"][0]),
            iwd=iwd,
            category=classify_iwd(iwd),
            degenerate=bool(out["degenerate"][0]),
        )

    def score_record(self, rec: GameplayRecord) -> IwdScore:
        return self.score_features(extract_features(rec))

    def score_records(self, records: Sequence[GameplayRecord]) -> list[IwdScore]:
        if not records:
            return []
        out = self.batch_score(features_from_records(records))
        return [
            IwdScore(
                ue=float(out["ue"][i]),
                cow=float(out["cow"][i]),
                iwd=float(out["iwd"][i]),
                category=classify_iwd(float(out["iwd"][i])),
                degenerate=bool(out["degenerate"][i]),
            )
            for i in range(len(records))
        ]
