"""Shared machinery for the permutation metaheuristics.

All five algorithms search the same genome: one real-valued key in [0, 1)
per (row, column) position.  Ranking a column's keys ascending yields the
column's permutation, so any continuous-space update rule produces a valid
reconfiguration without repair.  A common run loop owns population
bookkeeping, best-so-far tracking and the convergence trace; algorithms
plug in as steppers that advance the population one iteration.

The search minimizes the scalar fitness, while results are reported as the
best no-bypass power seen (the quantity the experiment protocol compares).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field
from typing import Callable, Protocol

import numpy as np

from ..arrays import IrradianceField, Reconfiguration
from ..fitness import FitnessBreakdown, FitnessWeights, evaluate as evaluate_single
from ..fitness import fitness_terms

#: Largest key value; keys live in [0, KEY_MAX] so decode ranks stay stable.
KEY_MAX = float(np.nextafter(1.0, 0.0))


def decode_keys(keys: np.ndarray) -> np.ndarray:
    """Rank keys per column: ``assign[..., i, j]`` = row of the i-th smallest key.

    Stable sorting breaks ties by physical row index, so equal keys decode
    to the identity order.
    """
    return np.argsort(keys, axis=-2, kind="stable")


def decode(keys: np.ndarray) -> Reconfiguration:
    """Decode one (r, c) key grid into a reconfiguration."""
    keys = np.asarray(keys, dtype=float)
    if keys.ndim != 2:
        raise ValueError("expected a 2-D key grid")
    if not np.all(np.isfinite(keys)):
        raise ValueError("keys must be finite")
    return Reconfiguration(decode_keys(keys))


def population_evaluator(
    field: IrradianceField, weights: FitnessWeights
) -> Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]:
    """Vectorized (fitness, power) evaluation of a (P, r, c) key population."""
    units = field.units
    cols = np.arange(field.cols)

    def evaluate(keys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        assign = decode_keys(keys)
        currents = units[assign, cols].sum(axis=2)
        fit, power, _, _ = fitness_terms(currents, weights)
        return fit, power

    return evaluate


@dataclass(frozen=True)
class OptimizerConfig:
    """Run parameters shared by all algorithms, plus per-algorithm knobs.

    Population 100 and 800 iterations are the protocol defaults; the
    algorithm-specific values follow the algorithms' source formulations
    and are freely overridable.
    """

    pop_size: int = 100
    max_iters: int = 800
    seed: int = 0
    target_power: float | None = None  # early stop once reached (V_m·I_m)

    # genetic algorithm
    tournament_size: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float | None = None  # default 1 / (r * c)
    elite_count: int = 1

    # imperialist competition
    n_imperialists: int = 10
    assimilation_coeff: float = 2.0
    revolution_rate: float = 0.1
    colony_power_share: float = 0.1

    # multi-verse
    wep_min: float = 0.2
    wep_max: float = 1.0
    tdr_exponent: float = 6.0

    # moth-flame spiral
    spiral_shape: float = 1.0
    spiral_t_min: float = -1.0
    spiral_t_max: float = 1.0

    def __post_init__(self):
        if self.pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if self.max_iters < 0:
            raise ValueError("max_iters must be non-negative")
        if not (0 < self.crossover_rate <= 1):
            raise ValueError("crossover_rate must lie in (0, 1]")
        if self.spiral_shape <= 0:
            raise ValueError("spiral_shape must be positive")
        if not (-1 <= self.spiral_t_min <= self.spiral_t_max <= 1):
            raise ValueError("spiral t-range must be ordered within [-1, 1]")


@dataclass(frozen=True)
class Candidate:
    """Best arrangement found by a run."""

    keys: np.ndarray
    cfg: Reconfiguration
    breakdown: FitnessBreakdown


@dataclass
class ConvergenceTrace:
    """Per-iteration best-so-far record of one run.

    Iteration 0 is the freshly evaluated initial population; iterations
    1..max_iters follow each update step.  ``first_best_iteration`` is the
    first iteration (>= 1) at which the run's final best power appears,
    matching the protocol's "iterations required to reach best power".
    """

    algorithm: str
    seed: int
    max_iters: int
    iterations: list[int] = dc_field(default_factory=list)
    best_fitness: list[float] = dc_field(default_factory=list)
    best_power: list[float] = dc_field(default_factory=list)
    first_best_iteration: int = 0
    wall_time: float = 0.0


class Stepper(Protocol):
    def step(self, t: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Advance one iteration; return (keys, fitness, power)."""


StepperFactory = Callable[
    [np.ndarray, np.ndarray, np.ndarray, OptimizerConfig, np.random.Generator,
     Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]],
    Stepper,
]


def run_search(
    field: IrradianceField,
    weights: FitnessWeights,
    cfg: OptimizerConfig,
    make_stepper: StepperFactory,
    algorithm: str,
) -> tuple[Candidate, ConvergenceTrace]:
    """Common run loop: initialize, iterate a stepper, track best-ever."""
    rng = np.random.default_rng(cfg.seed)
    evaluate = population_evaluator(field, weights)
    trace = ConvergenceTrace(algorithm=algorithm, seed=cfg.seed, max_iters=cfg.max_iters)

    start = time.perf_counter()
    keys = rng.random((cfg.pop_size, field.rows, field.cols))
    fit, power = evaluate(keys)

    best_idx = int(np.argmax(power))
    best_keys = keys[best_idx].copy()
    best_power = float(power[best_idx])
    best_fitness = float(fit.min())

    trace.iterations.append(0)
    trace.best_fitness.append(best_fitness)
    trace.best_power.append(best_power)

    stepper = make_stepper(keys, fit, power, cfg, rng, evaluate)
    for t in range(1, cfg.max_iters + 1):
        keys, fit, power = stepper.step(t)
        idx = int(np.argmax(power))
        if float(power[idx]) > best_power:
            best_power = float(power[idx])
            best_keys = keys[idx].copy()
        best_fitness = min(best_fitness, float(fit.min()))
        trace.iterations.append(t)
        trace.best_fitness.append(best_fitness)
        trace.best_power.append(best_power)
        if cfg.target_power is not None and best_power >= cfg.target_power:
            break
    trace.wall_time = time.perf_counter() - start

    trace.first_best_iteration = 0
    for t, p in zip(trace.iterations, trace.best_power):
        if t >= 1 and p == best_power:
            trace.first_best_iteration = t
            break

    candidate = Candidate(
        keys=best_keys,
        cfg=decode(best_keys),
        breakdown=evaluate_single(field, decode(best_keys), weights),
    )
    return candidate, trace


def scaled_time_to_best(
    mean_run_time: float, max_iters: int, mean_first_best: float
) -> float:
    """Time-per-iteration times mean iterations-to-best (seconds)."""
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    return mean_run_time / max_iters * mean_first_best


def mean_time_metric(traces: list[ConvergenceTrace]) -> float:
    """The run-set comparison metric: mean wall time per iteration, scaled
    by the mean number of iterations needed to reach each run's best power."""
    if not traces:
        raise ValueError("need at least one completed run")
    iters = {t.max_iters for t in traces}
    if len(iters) != 1:
        raise ValueError("traces must share the same iteration budget")
    mean_wall = float(np.mean([t.wall_time for t in traces]))
    mean_first = float(np.mean([t.first_best_iteration for t in traces]))
    return scaled_time_to_best(mean_wall, iters.pop(), mean_first)
