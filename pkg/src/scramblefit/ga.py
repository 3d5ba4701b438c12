"""Real-coded genetic tuning of membership-function parameters.

A chromosome is the flat vector of every gaussian/sigmoid parameter of the
tunable variables, in the fixed layout given by the config (variables in
the config's tunable order, labels in declared order, each contributing
[sigma-or-slope, center]). The was_skipped triangles are never touched.

Fitness is the sum of squared differences between the crisp difficulty and
the user rating, over rated records. Lower is better.

Reproducibility: one seeded generator drives the whole run and is consumed
in a fixed order inside the sequential generational loop - initial uniform
population, then per generation the selection phase offset, one shuffle of
the selected parents, one crossover mask per pair, and one direction vector
per mutation child. Fitness evaluation draws no random numbers, so
evaluating in parallel cannot change results.
"""

from __future__ import annotations

import csv
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .config import ModelConfig
from .errors import ConfigError, InputError
from .model import DifficultyModel, GameplayRecord, features_from_records

# Scale parameters (sigma, slope) must stay positive for membership
# functions to stay valid; their lower bound is floored at this fraction of
# the universe width even where the +-50% box would reach zero or below.
# Unlike centers they are not clipped to the universe: a sigma below the
# universe minimum is perfectly meaningful.
MIN_SCALE_FRACTION = 0.01


@dataclass(frozen=True)
class GeneSpec:
    variable: str
    label: str
    param_index: int
    param_name: str
    lo: float
    hi: float
    heuristic: float


class ParameterLayout:
    """Fixed bijection between a config's tunable parameters and a flat vector."""

    def __init__(self, config: ModelConfig):
        self.template = config
        genes: list[GeneSpec] = []
        for var_name in config.tunable:
            var = config.variables[var_name]
            width = var.hi - var.lo
            for label, mf in var.labels:
                if mf.form == "triangular":
                    continue  # fixed-shape labels are not tuned
                names = ("sigma", "center") if mf.form == "gaussian" else ("slope", "center")
                for idx, (pname, value) in enumerate(zip(names, mf.params)):
                    if pname in ("sigma", "slope"):
                        lo = max(value - 0.5 * width, MIN_SCALE_FRACTION * width)
                        # the search box must always contain the start point
                        lo = min(lo, value)
                        hi = value + 0.5 * width
                    else:
                        lo = max(value - 0.5 * width, var.lo)
                        hi = min(value + 0.5 * width, var.hi)
                    if not lo < hi:
                        raise ConfigError(
                            f"empty bounds for {var_name}.{label}.{pname}: [{lo}, {hi}]"
                        )
                    genes.append(GeneSpec(var_name, label, idx, pname, lo, hi, float(value)))
        if not genes:
            raise ConfigError("config has no tunable parameters")
        self.genes = tuple(genes)
        self.lower = np.array([g.lo for g in genes])
        self.upper = np.array([g.hi for g in genes])

    def __len__(self) -> int:
        return len(self.genes)

    def encode(self, config: ModelConfig) -> np.ndarray:
        """Read the tunable parameters of a config into a gene vector."""
        values = []
        for g in self.genes:
            mf = config.variables[g.variable].mf(g.label)
            values.append(mf.params[g.param_index])
        return np.array(values, dtype=np.float64)

    def decode(self, genes: np.ndarray, template: ModelConfig | None = None) -> ModelConfig:
        """Write a gene vector into a copy of the template config."""
        template = template if template is not None else self.template
        genes = np.asarray(genes, dtype=np.float64)
        if genes.shape != (len(self.genes),):
            raise ConfigError(f"expected {len(self.genes)} genes, got shape {genes.shape}")
        config = template
        by_mf: dict[tuple[str, str], list[tuple[int, float]]] = {}
        for g, value in zip(self.genes, genes):
            by_mf.setdefault((g.variable, g.label), []).append((g.param_index, float(value)))
        for (var_name, label), updates in by_mf.items():
            mf = config.variables[var_name].mf(label)
            params = list(mf.params)
            for idx, value in updates:
                params[idx] = value
            config = config.replace_mf(var_name, label, mf.with_params(params))
        return config

    def in_bounds(self, genes: np.ndarray) -> bool:
        return bool(np.all(genes >= self.lower) and np.all(genes <= self.upper))


@dataclass(frozen=True)
class GaSettings:
    seed: int
    population_size: int = 200
    max_generations: int = 100
    stall_generations: int = 20
    stall_tolerance: float = 1e-6
    elite_count: int = 2
    crossover_fraction: float = 0.8
    fitness_workers: int = 1

    def __post_init__(self):
        if self.population_size < 2:
            raise InputError("population_size must be >= 2")
        if not 0 <= self.elite_count < self.population_size:
            raise InputError("elite_count must be in [0, population_size)")
        if not 0.0 <= self.crossover_fraction <= 1.0:
            raise InputError("crossover_fraction must be in [0, 1]")
        if self.max_generations < 0 or self.stall_generations < 1:
            raise InputError("generation limits must be positive")
        if self.fitness_workers < 1:
            raise InputError("fitness_workers must be >= 1")


@dataclass(frozen=True)
class GenerationStats:
    generation: int
    best: float
    mean: float


@dataclass(frozen=True)
class GaResult:
    best_genes: np.ndarray
    best_fitness: float
    best_config: ModelConfig
    heuristic_fitness: float
    history: tuple[GenerationStats, ...]
    generations_run: int
    stalled: bool


def _prepare_training_columns(records: Sequence[GameplayRecord]):
    rated = [r for r in records if r.urd is not None]
    if not rated:
        raise InputError("training needs at least one record with a user rating")
    features = features_from_records(rated)
    urd = np.array([float(r.urd) for r in rated])
    return features, urd


def fitness(chromosome: np.ndarray, layout: ParameterLayout, records: Sequence[GameplayRecord]) -> float:
    """Sum of squared (crisp difficulty - user rating) over the dataset."""
    if not records:
        raise InputError("fitness needs a non-empty dataset")
    if any(r.urd is None for r in records):
        raise InputError("fitness dataset must carry a user rating on every record")
    features, urd = _prepare_training_columns(records)
    return _sse(chromosome, layout, features, urd)


def _sse(chromosome: np.ndarray, layout: ParameterLayout, features: dict, urd: np.ndarray) -> float:
    model = DifficultyModel(layout.decode(chromosome))
    iwd = model.batch_score(features)["iwd"]
    diff = iwd - urd
    return float(np.dot(diff, diff))


def run_ga(
    settings: GaSettings,
    template: ModelConfig,
    records: Sequence[GameplayRecord],
    observer: Callable[[int, np.ndarray, np.ndarray], None] | None = None,
) -> GaResult:
    """Tune the template's membership parameters against rated records.

    Records without a rating are excluded up front. The heuristic template
    itself is individual 0 of the initial population, so with elitism the
    final best can never be worse than the heuristic.

    If given, observer(generation, population, fitness) is called after each
    generation is evaluated, generation 0 included. The arrays are live state
    and must be treated as read-only.
    """
    layout = ParameterLayout(template)
    features, urd = _prepare_training_columns(records)
    rng = np.random.default_rng(settings.seed)
    n, d = settings.population_size, len(layout)
    lower, upper = layout.lower, layout.upper

    pop = np.empty((n, d))
    pop[0] = layout.encode(template)
    if n > 1:
        pop[1:] = rng.uniform(lower, upper, size=(n - 1, d))

    def evaluate(rows: np.ndarray) -> np.ndarray:
        if settings.fitness_workers > 1:
            with ThreadPoolExecutor(max_workers=settings.fitness_workers) as pool:
                return np.fromiter(
                    pool.map(lambda r: _sse(r, layout, features, urd), rows),
                    dtype=np.float64,
                    count=len(rows),
                )
        return np.fromiter(
            (_sse(row, layout, features, urd) for row in rows), dtype=np.float64, count=len(rows)
        )

    fit = evaluate(pop)
    heuristic_fitness = float(fit[0])
    history = [GenerationStats(0, float(fit.min()), float(fit.mean()))]
    if observer is not None:
        observer(0, pop, fit)

    n_offspring = n - settings.elite_count
    n_crossover = int(round(settings.crossover_fraction * n_offspring))
    n_mutation = n_offspring - n_crossover
    mutation_scale = 1.0
    stall = 0
    generations_run = 0
    stalled = False

    for generation in range(1, settings.max_generations + 1):
        order = np.argsort(fit, kind="stable")
        prev_best = float(fit[order[0]])

        # Rank scaling: score 1/sqrt(rank) with rank 1 = most fit, so raw
        # SSE magnitudes never reach selection.
        scores = 1.0 / np.sqrt(np.arange(1, n + 1, dtype=np.float64))
        total = scores.sum()

        # Stochastic uniform selection: one random phase then equal strides
        # along the cumulative score line of the rank-sorted population. The
        # pointer walk returns picks in rank order, which would pair each
        # crossover parent with a near-copy of itself; shuffle before pairing.
        n_parents = 2 * n_crossover + n_mutation
        cumulative = np.cumsum(scores)
        stride = total / n_parents if n_parents else total
        phase = rng.uniform(0.0, stride) if n_parents else 0.0
        pointers = phase + stride * np.arange(n_parents)
        picks = np.searchsorted(cumulative, pointers, side="right")
        picks = picks[rng.permutation(n_parents)]
        parents = pop[order[picks]]

        children = np.empty((n_offspring, d))
        # Scattered crossover: per-gene mask, True takes parent A.
        for i in range(n_crossover):
            a, b = parents[2 * i], parents[2 * i + 1]
            mask = rng.random(d) < 0.5
            children[i] = np.where(mask, a, b)
        # Adaptive feasible mutation: step along a random unit direction,
        # per-gene magnitude 1% of the bound range times the adaptive scale,
        # then projected back into bounds.
        for i in range(n_mutation):
            parent = parents[2 * n_crossover + i]
            direction = rng.standard_normal(d)
            norm = np.linalg.norm(direction)
            if norm > 0.0:
                direction /= norm
            step = mutation_scale * 0.01 * (upper - lower) * direction
            children[n_crossover + i] = np.clip(parent + step, lower, upper)

        elite_rows = order[: settings.elite_count]
        new_pop = np.vstack([pop[elite_rows], children])
        new_fit = np.concatenate([fit[elite_rows], evaluate(children)])
        pop, fit = new_pop, new_fit
        generations_run = generation
        if observer is not None:
            observer(generation, pop, fit)

        best = float(fit.min())
        history.append(GenerationStats(generation, best, float(fit.mean())))
        improvement = prev_best - best
        mutation_scale *= 1.1 if improvement > 0.0 else 0.7
        if improvement < settings.stall_tolerance:
            stall += 1
            if stall >= settings.stall_generations:
                stalled = True
                break
        else:
            stall = 0

    best_idx = int(np.argmin(fit))
    best_genes = pop[best_idx].copy()
    return GaResult(
        best_genes=best_genes,
        best_fitness=float(fit[best_idx]),
        best_config=layout.decode(best_genes),
        heuristic_fitness=heuristic_fitness,
        history=tuple(history),
        generations_run=generations_run,
        stalled=stalled,
    )


def write_history_csv(history: Sequence[GenerationStats], path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["generation", "best_sse", "mean_sse"])
        for row in history:
            writer.writerow([row.generation, repr(row.best), repr(row.mean)])
