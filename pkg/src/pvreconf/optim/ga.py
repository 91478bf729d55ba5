"""Elitist generational genetic algorithm on random keys."""

from __future__ import annotations

import numpy as np

from ..arrays import IrradianceField
from ..fitness import FitnessWeights
from .common import Candidate, ConvergenceTrace, OptimizerConfig, run_search


class _GaStepper:
    """Tournament selection, uniform crossover, per-gene resampling mutation."""

    def __init__(self, keys, fitness, power, cfg, rng, evaluate):
        self.pop, self.r, self.c = keys.shape
        self.dim = self.r * self.c
        self.keys = keys
        self.fitness = fitness
        self.power = power
        self.cfg = cfg
        self.rng = rng
        self.evaluate = evaluate
        self.mutation_rate = (
            cfg.mutation_rate if cfg.mutation_rate is not None else 1.0 / self.dim
        )
        self.elite = min(cfg.elite_count, self.pop - 1)

    def _tournament(self, n: int) -> np.ndarray:
        entrants = self.rng.integers(0, self.pop, size=(n, self.cfg.tournament_size))
        winners = np.argmin(self.fitness[entrants], axis=1)
        return entrants[np.arange(n), winners]

    def step(self, t: int):
        flat = self.keys.reshape(self.pop, self.dim)
        order = np.argsort(self.fitness, kind="stable")
        elites = flat[order[: self.elite]].copy()

        n_off = self.pop - self.elite
        p1 = self._tournament(n_off)
        p2 = self._tournament(n_off)
        gene_mask = self.rng.random((n_off, self.dim)) < 0.5
        children = np.where(gene_mask, flat[p1], flat[p2])
        crossed = self.rng.random(n_off) < self.cfg.crossover_rate
        children[~crossed] = flat[p1][~crossed]

        mutated = self.rng.random((n_off, self.dim)) < self.mutation_rate
        children[mutated] = self.rng.random(int(mutated.sum()))

        self.keys = np.concatenate([elites, children]).reshape(
            self.pop, self.r, self.c
        )
        self.fitness, self.power = self.evaluate(self.keys)
        return self.keys, self.fitness, self.power


def run_ga(
    field: IrradianceField,
    weights: FitnessWeights = FitnessWeights(),
    cfg: OptimizerConfig = OptimizerConfig(),
) -> tuple[Candidate, ConvergenceTrace]:
    return run_search(field, weights, cfg, _GaStepper, "ga")
