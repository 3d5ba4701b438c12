"""Permutation metrics for scrambled words, plus a scramble generator.

The headline metric weights a mismatch at letter position i by 2^-i, so
disagreement early in the word counts more than disagreement at the end.
All comparisons are case-insensitive over ASCII letters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError, NoValidScrambleError, UndefinedCorrelationError


def _normalize_word(s: str, what: str) -> str:
    if not isinstance(s, str):
        raise InputError(f"{what} must be a string, got {type(s).__name__}")
    s = s.lower()
    if not s.isascii() or not s.isalpha():
        raise InputError(f"{what} must be ASCII letters only, got {s!r}")
    return s


@dataclass(frozen=True)
class ScramblePair:
    """A word and a genuine rearrangement of it (same letters, different order)."""

    word: str
    scramble: str

    def __post_init__(self):
        word = _normalize_word(self.word, "word")
        scramble = _normalize_word(self.scramble, "scramble")
        object.__setattr__(self, "word", word)
        object.__setattr__(self, "scramble", scramble)
        if len(word) != len(scramble):
            raise InputError(f"length mismatch: {word!r} vs {scramble!r}")
        if len(word) < 2:
            raise InputError("scramble pairs need at least 2 letters")
        if sorted(word) != sorted(scramble):
            raise InputError(f"{scramble!r} is not a rearrangement of {word!r}")
        if word == scramble:
            raise InputError("scramble must differ from the word")

    def degree_of_scramble(self) -> float:
        return degree_of_scramble(self.word, self.scramble)

    def normalized_hamming(self) -> float:
        return normalized_hamming(self.word, self.scramble)


def _pair_strings(word, scramble) -> tuple[str, str]:
    if isinstance(word, ScramblePair):
        if scramble is not None:
            raise InputError("pass either a ScramblePair or two strings, not both")
        return word.word, word.scramble
    if scramble is None:
        raise InputError("scramble string missing")
    word = word.lower()
    scramble = scramble.lower()
    if len(word) != len(scramble):
        raise InputError(f"length mismatch: {word!r} vs {scramble!r}")
    if not word:
        raise InputError("empty word")
    return word, scramble


def indicator(wi: str, pi: str) -> int:
    """1 if the two letters differ, 0 if they are the same (case-insensitive)."""
    if len(wi) != 1 or len(pi) != 1:
        raise InputError("indicator compares single letters")
    return 0 if wi.lower() == pi.lower() else 1


def degree_of_scramble(word, scramble=None) -> float:
    """Position-weighted mismatch score: sum over i of 2^-i when letters differ.

    Positions are 1-based, so the first letter carries weight 1/2 and the
    total is strictly below 1. Accepts a ScramblePair or two equal-length
    strings. Every term and partial sum is an exact dyadic rational for
    realistic lengths, so results carry no accumulated rounding.
    """
    w, p = _pair_strings(word, scramble)
    s = 0.0
    for i in range(len(w)):
        if w[i] != p[i]:
            s += 2.0 ** -(i + 1)
    return s


def normalized_hamming(word, scramble=None) -> float:
    """Fraction of positions where the two strings disagree."""
    w, p = _pair_strings(word, scramble)
    mismatches = sum(1 for a, b in zip(w, p) if a != b)
    return mismatches / len(w)


def pearson(xs, ys) -> float:
    """Sample Pearson correlation coefficient of two equal-length sequences."""
    x = np.asarray(list(xs), dtype=np.float64)
    y = np.asarray(list(ys), dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1 or x.size != y.size:
        raise InputError("pearson needs two equal-length 1-d sequences")
    if x.size < 3:
        raise InputError(f"pearson needs at least 3 points, got {x.size}")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    if sxx == 0.0 or syy == 0.0:
        raise UndefinedCorrelationError("correlation undefined for a constant sequence")
    return float(np.dot(dx, dy) / np.sqrt(sxx * syy))


def generate_scramble(
    word: str,
    seed: int | np.random.Generator,
    keep_suffix: str | None = None,
) -> ScramblePair:
    """Deterministically scramble a word; optionally keep a trailing suffix fixed.

    With ``keep_suffix`` only the letters before the suffix are permuted and
    the suffix stays in place. Raises NoValidScrambleError when the permuted
    region has fewer than 2 distinct letters (no rearrangement can differ).
    """
    word = _normalize_word(word, "word")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    if keep_suffix is not None:
        keep_suffix = _normalize_word(keep_suffix, "keep_suffix")
        if not word.endswith(keep_suffix) or len(keep_suffix) >= len(word):
            raise InputError(f"{word!r} does not end with scramble-exempt suffix {keep_suffix!r}")
        head, tail = word[: len(word) - len(keep_suffix)], keep_suffix
    else:
        head, tail = word, ""
    if len(set(head)) < 2:
        raise NoValidScrambleError(f"cannot scramble {word!r}: permutable letters all identical")
    letters = np.array(list(head))
    while True:
        permuted = "".join(letters[rng.permutation(len(letters))])
        if permuted != head:
            return ScramblePair(word, permuted + tail)
