"""The default word set and its frozen scrambles.

Tasks are presented in one fixed order for every participant so that no
one sees an easier or harder sequence. 'hazardous' appears twice: an early
variant with the 'ous' suffix left in place, and a later fully permuted
variant. Scrambles were generated once with a recorded seed and are shipped
literally; see the notes inside the data file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import ConfigError
from .scramble import ScramblePair

CATEGORIES = ("general", "edibles", "items", "acts", "animals", "colors")


@dataclass(frozen=True)
class WordTask:
    task_id: str
    word: str
    scramble: str
    category: str
    position: int
    note: str | None = None

    def __post_init__(self):
        if self.category not in CATEGORIES:
            raise ConfigError(f"unknown word category {self.category!r}")
        if self.position < 1:
            raise ConfigError(f"positions are 1-based, got {self.position}")
        ScramblePair(self.word, self.scramble)  # raises if the pair is invalid


def _tasks_from_dict(d: dict) -> list[WordTask]:
    tasks = [
        WordTask(
            task_id=t["task_id"],
            word=t["word"],
            scramble=t["scramble"],
            category=t["category"],
            position=int(t["position"]),
            note=t.get("note"),
        )
        for t in d["tasks"]
    ]
    tasks.sort(key=lambda t: t.position)
    positions = [t.position for t in tasks]
    if positions != list(range(1, len(tasks) + 1)):
        raise ConfigError("task positions must be 1..n with no gaps")
    if len({t.task_id for t in tasks}) != len(tasks):
        raise ConfigError("duplicate task ids")
    return tasks


def load_tasks(path: str | Path) -> list[WordTask]:
    with open(path, encoding="utf-8") as fh:
        return _tasks_from_dict(json.load(fh))


def default_tasks() -> list[WordTask]:
    text = resources.files("scramblefit").joinpath("data/words.json").read_text("utf-8")
    return _tasks_from_dict(json.loads(text))


def resolve_tasks(spec: str) -> list[WordTask]:
    """'default' or a path to a words JSON file."""
    if spec == "default":
        return default_tasks()
    return load_tasks(spec)
