"""Grey-wolf search: the population moves toward the mean of three
attractors derived from the best three solutions seen so far, with the
exploration coefficient decaying linearly to zero."""

from __future__ import annotations

import numpy as np

from ..arrays import IrradianceField
from ..fitness import FitnessWeights
from .common import (
    KEY_MAX,
    Candidate,
    ConvergenceTrace,
    OptimizerConfig,
    run_search,
)

_N_LEADERS = 3


class _GwoStepper:
    def __init__(self, keys, fitness, power, cfg, rng, evaluate):
        self.pop, self.r, self.c = keys.shape
        self.dim = self.r * self.c
        self.cfg = cfg
        self.rng = rng
        self.evaluate = evaluate
        self.keys = keys
        self.fitness = fitness
        self.power = power
        order = np.argsort(fitness, kind="stable")[:_N_LEADERS]
        self.leader_keys = keys.reshape(self.pop, self.dim)[order].copy()
        self.leader_fit = fitness[order].copy()

    def step(self, t: int):
        a = 2.0 * (1.0 - t / max(self.cfg.max_iters, 1))
        flat = self.keys.reshape(self.pop, self.dim)
        acc = np.zeros_like(flat)
        for leader in self.leader_keys:
            r1 = self.rng.random((self.pop, self.dim))
            r2 = self.rng.random((self.pop, self.dim))
            coeff_a = 2.0 * a * r1 - a
            coeff_c = 2.0 * r2
            acc += leader - coeff_a * np.abs(coeff_c * leader - flat)
        self.keys = np.clip(acc / len(self.leader_keys), 0.0, KEY_MAX).reshape(
            self.pop, self.r, self.c
        )
        self.fitness, self.power = self.evaluate(self.keys)

        # leaders keep the best three solutions ever seen (ties favor incumbents)
        pool_keys = np.concatenate(
            [self.leader_keys, self.keys.reshape(self.pop, self.dim)]
        )
        pool_fit = np.concatenate([self.leader_fit, self.fitness])
        order = np.argsort(pool_fit, kind="stable")[:_N_LEADERS]
        self.leader_keys = pool_keys[order].copy()
        self.leader_fit = pool_fit[order].copy()
        return self.keys, self.fitness, self.power


def run_gwo(
    field: IrradianceField,
    weights: FitnessWeights = FitnessWeights(),
    cfg: OptimizerConfig = OptimizerConfig(),
) -> tuple[Candidate, ConvergenceTrace]:
    return run_search(field, weights, cfg, _GwoStepper, "gwo")
