"""Fuzzy word-difficulty scoring for a word-scramble game.

Layers gameplay features through a two-stage Mamdani fuzzy system to a
crisp Individualized Word Difficulty (IWD), tunes the membership functions
with a bounded real-coded genetic algorithm against user ratings, and ships
the evaluation harness, session service, and CLI around it.
"""

__version__ = "0.1.0"

from .config import ModelConfig
from .errors import (
    ConfigError,
    DegenerateOutputError,
    InputError,
    NoValidScrambleError,
    ScramblefitError,
    SessionStateError,
    UndefinedCorrelationError,
)
from .evaluation import ConfusionMatrix, PrfResult, leave_one_out, map_urd, prf, resubstitution
from .ga import GaSettings, ParameterLayout, fitness, run_ga
from .model import (
    DifficultyCategory,
    DifficultyModel,
    FeatureVector,
    GameplayRecord,
    classify_iwd,
    extract_features,
)
from .scramble import (
    ScramblePair,
    degree_of_scramble,
    generate_scramble,
    indicator,
    normalized_hamming,
    pearson,
)
from .session import AbilityModel, GameSession, rescore_log, simulate_participants
from .words import WordTask, default_tasks

__all__ = [
    "AbilityModel",
    "ConfigError",
    "ConfusionMatrix",
    "DegenerateOutputError",
    "DifficultyCategory",
    "DifficultyModel",
    "FeatureVector",
    "GameplayRecord",
    "GameSession",
    "GaSettings",
    "InputError",
    "ModelConfig",
    "NoValidScrambleError",
    "ParameterLayout",
    "PrfResult",
    "ScramblePair",
    "ScramblefitError",
    "SessionStateError",
    "UndefinedCorrelationError",
    "WordTask",
    "classify_iwd",
    "default_tasks",
    "degree_of_scramble",
    "extract_features",
    "fitness",
    "generate_scramble",
    "indicator",
    "leave_one_out",
    "map_urd",
    "normalized_hamming",
    "pearson",
    "prf",
    "rescore_log",
    "resubstitution",
    "run_ga",
    "simulate_participants",
    "__version__",
]
