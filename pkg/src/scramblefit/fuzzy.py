"""Single-stage Mamdani fuzzy inference.

Operator choices are fixed package-wide: conjunction = min, implication =
min, aggregation = max, defuzzification = centroid over the output universe
sampled at ``GRID_POINTS`` evenly spaced points.

Batch scoring and single-record inference share one accumulation kernel, so
a value computed record-by-record is bit-identical to the same value
computed inside a vectorized fitness sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np
from numba import njit

from .errors import ConfigError, DegenerateOutputError, InputError

GRID_POINTS = 1001


# ---------------------------------------------------------------------------
# Membership functions


@dataclass(frozen=True)
class GaussianMF:
    """exp(-(x - center)^2 / (2 sigma^2)); params = [sigma, center]."""

    sigma: float
    center: float

    form = "gaussian"

    def __post_init__(self):
        if not (self.sigma > 0.0):
            raise ConfigError(f"gaussian sigma must be > 0, got {self.sigma}")

    @property
    def params(self) -> tuple[float, float]:
        return (self.sigma, self.center)

    def with_params(self, params: Sequence[float]) -> "GaussianMF":
        return GaussianMF(float(params[0]), float(params[1]))

    def evaluate(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.exp(-((x - self.center) ** 2) / (2.0 * self.sigma**2))


@dataclass(frozen=True)
class SigmoidMF:
    """1 / (1 + exp(-slope (x - center))); params = [slope, center]."""

    slope: float
    center: float

    form = "sigmoid"

    def __post_init__(self):
        if not math.isfinite(self.slope) or not math.isfinite(self.center):
            raise ConfigError("sigmoid parameters must be finite")

    @property
    def params(self) -> tuple[float, float]:
        return (self.slope, self.center)

    def with_params(self, params: Sequence[float]) -> "SigmoidMF":
        return SigmoidMF(float(params[0]), float(params[1]))

    def evaluate(self, x):
        x = np.asarray(x, dtype=np.float64)
        # exp may overflow to inf for extreme slopes; 1/(1+inf) -> 0 is the
        # correct limit, so suppress the warning rather than branching.
        with np.errstate(over="ignore"):
            return 1.0 / (1.0 + np.exp(-self.slope * (x - self.center)))


@dataclass(frozen=True)
class TriangularMF:
    """Piecewise-linear hat; params = [left, peak, right]."""

    left: float
    peak: float
    right: float

    form = "triangular"

    def __post_init__(self):
        if not (self.left <= self.peak <= self.right and self.left < self.right):
            raise ConfigError(
                f"triangular needs left <= peak <= right and left < right, "
                f"got [{self.left}, {self.peak}, {self.right}]"
            )

    @property
    def params(self) -> tuple[float, float, float]:
        return (self.left, self.peak, self.right)

    def with_params(self, params: Sequence[float]) -> "TriangularMF":
        return TriangularMF(float(params[0]), float(params[1]), float(params[2]))

    def evaluate(self, x):
        x = np.asarray(x, dtype=np.float64)
        one = np.ones_like(x)
        up = (x - self.left) / (self.peak - self.left) if self.peak > self.left else one
        down = (self.right - x) / (self.right - self.peak) if self.right > self.peak else one
        return np.clip(np.minimum(up, down), 0.0, 1.0)


MembershipFunction = GaussianMF | SigmoidMF | TriangularMF

_MF_FORMS = {"gaussian": GaussianMF, "sigmoid": SigmoidMF, "triangular": TriangularMF}


def make_mf(form: str, params: Sequence[float]) -> MembershipFunction:
    try:
        cls = _MF_FORMS[form]
    except KeyError:
        raise ConfigError(f"unknown membership function form {form!r}") from None
    return cls(*[float(p) for p in params])


def eval_membership(mf: MembershipFunction, x: float) -> float:
    """Degree of membership of a single finite point, always in [0, 1]."""
    x = float(x)
    if not math.isfinite(x):
        raise InputError(f"membership evaluation needs a finite x, got {x}")
    return float(mf.evaluate(x))


# ---------------------------------------------------------------------------
# Variables, rules, nodes


@dataclass(frozen=True)
class LinguisticVariable:
    name: str
    lo: float
    hi: float
    labels: tuple[tuple[str, MembershipFunction], ...]

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ConfigError(f"variable {self.name!r}: universe needs lo < hi")
        if not self.labels:
            raise ConfigError(f"variable {self.name!r}: at least one label required")
        names = [n for n, _ in self.labels]
        if len(set(names)) != len(names):
            raise ConfigError(f"variable {self.name!r}: duplicate label names")

    @property
    def label_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.labels)

    def mf(self, label: str) -> MembershipFunction:
        for n, f in self.labels:
            if n == label:
                return f
        raise ConfigError(f"variable {self.name!r} has no label {label!r}")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def grid(self, points: int = GRID_POINTS) -> np.ndarray:
        return np.linspace(self.lo, self.hi, points)

    def clamp(self, x):
        return np.clip(x, self.lo, self.hi)


@dataclass(frozen=True)
class FuzzyRule:
    """IF all antecedent (variable, label) pairs THEN consequent (variable, label)."""

    antecedent: tuple[tuple[str, str], ...]
    consequent: tuple[str, str]

    def __post_init__(self):
        if not self.antecedent:
            raise ConfigError("rule antecedent must be non-empty")


@njit(cache=True)
def _aggregate_moments(w, cons, grid):
    """Aggregate clipped consequents and accumulate centroid sums per row.

    w: (B, R) firing strengths; cons: (R, G) consequent curves on the output
    grid; returns (area, first_moment) each of shape (B,). The per-row x-sweep
    is a fixed ascending sum, so results do not depend on batch size.
    """
    B, R = w.shape
    G = grid.shape[0]
    s0 = np.zeros(B)
    s1 = np.zeros(B)
    agg = np.empty(G)
    for b in range(B):
        agg[:] = 0.0
        for r in range(R):
            wr = w[b, r]
            if wr <= 0.0:
                continue
            for x in range(G):
                t = cons[r, x]
                if wr < t:
                    t = wr
                if t > agg[x]:
                    agg[x] = t
        a0 = 0.0
        a1 = 0.0
        for x in range(G):
            a0 += agg[x]
            a1 += agg[x] * grid[x]
        s0[b] = a0
        s1[b] = a1
    return s0, s1


@dataclass(frozen=True)
class InferenceResult:
    crisp: float
    aggregate: np.ndarray  # membership sampled on the output grid
    degenerate: bool


class FisNode:
    """One Mamdani stage: several input variables, one output variable, rules."""

    def __init__(
        self,
        name: str,
        inputs: Sequence[LinguisticVariable],
        output: LinguisticVariable,
        rules: Sequence[FuzzyRule],
    ):
        self.name = name
        self.inputs = tuple(inputs)
        self.output = output
        self.rules = tuple(rules)
        self._input_names = {v.name: v for v in self.inputs}
        if len(self._input_names) != len(self.inputs):
            raise ConfigError(f"node {name!r}: duplicate input variable names")
        for rule in self.rules:
            for var, label in rule.antecedent:
                if var not in self._input_names:
                    raise ConfigError(f"node {name!r}: rule references unknown input {var!r}")
                self._input_names[var].mf(label)  # raises on unknown label
            cvar, clabel = rule.consequent
            if cvar != output.name:
                raise ConfigError(f"node {name!r}: rule consequent {cvar!r} is not the output")
            output.mf(clabel)
        if not self.rules:
            raise ConfigError(f"node {name!r}: at least one rule required")

    # -- shared scoring path ------------------------------------------------

    def _consequent_curves(self) -> np.ndarray:
        grid = self.output.grid()
        curves = {label: mf.evaluate(grid) for label, mf in self.output.labels}
        return np.ascontiguousarray(np.stack([curves[r.consequent[1]] for r in self.rules]))

    def firing_strengths(self, values: Mapping[str, np.ndarray]) -> np.ndarray:
        """(B, R) rule activations for clamped input arrays keyed by variable."""
        degrees: dict[tuple[str, str], np.ndarray] = {}
        cols = []
        for rule in self.rules:
            terms = []
            for var, label in rule.antecedent:
                key = (var, label)
                if key not in degrees:
                    degrees[key] = self._input_names[var].mf(label).evaluate(values[var])
                terms.append(degrees[key])
            cols.append(terms[0] if len(terms) == 1 else np.minimum.reduce(terms))
        return np.ascontiguousarray(np.stack(cols, axis=1))

    def batch_crisp(self, values: Mapping[str, np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
        """Crisp outputs and degenerate flags for a batch of input vectors.

        ``values`` maps each input variable name to a (B,) array. Inputs are
        clamped to their universes. Rows whose rules all fire at exactly zero
        get the universe midpoint and a True flag.
        """
        for var in self._input_names:
            if var not in values:
                raise InputError(f"node {self.name!r}: missing input {var!r}")
        clamped = {
            name: var.clamp(np.asarray(values[name], dtype=np.float64))
            for name, var in self._input_names.items()
        }
        w = self.firing_strengths(clamped)
        grid = self.output.grid()
        s0, s1 = _aggregate_moments(w, self._consequent_curves(), grid)
        degenerate = s0 == 0.0
        crisp = np.where(degenerate, self.output.midpoint, s1 / np.where(degenerate, 1.0, s0))
        return crisp, degenerate

    def infer(self, values: Mapping[str, float]) -> InferenceResult:
        """Score one input vector; also returns the sampled aggregate set."""
        batch = {}
        for var in self._input_names:
            if var not in values:
                raise InputError(f"node {self.name!r}: missing input {var!r}")
            x = float(values[var])
            if not math.isfinite(x):
                raise InputError(f"node {self.name!r}: input {var!r} must be finite, got {x}")
            batch[var] = np.array([x])
        crisp, degenerate = self.batch_crisp(batch)
        clamped = {name: var.clamp(np.array([float(values[name])])) for name, var in self._input_names.items()}
        w = self.firing_strengths(clamped)[0]
        aggregate = np.max(np.minimum(w[:, None], self._consequent_curves()), axis=0)
        return InferenceResult(float(crisp[0]), aggregate, bool(degenerate[0]))


def centroid(samples: Sequence[tuple[float, float]]) -> float:
    """Centroid of a sampled fuzzy set given as (x, membership) pairs."""
    xs = np.asarray([x for x, _ in samples], dtype=np.float64)
    mus = np.asarray([mu for _, mu in samples], dtype=np.float64)
    if xs.size == 0:
        raise InputError("centroid needs at least one sample")
    if xs.size > 1 and not np.all(np.diff(xs) > 0):
        raise InputError("centroid sample xs must be strictly increasing")
    total = float(np.sum(mus))
    if total == 0.0:
        raise DegenerateOutputError("centroid of an all-zero membership set is undefined")
    return float(np.sum(mus * xs) / total)
