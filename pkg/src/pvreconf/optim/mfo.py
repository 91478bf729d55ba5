"""Moth-flame search: moths spiral logarithmically around the best
solutions seen so far (flames), and the number of flames shrinks linearly
so the swarm condenses onto the best region."""

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


def spiral_step(moth, flame, shape: float, t):
    """One spiral update: ``|flame - moth| * exp(shape*t) * cos(2*pi*t) + flame``.

    At ``t = 0`` this reduces to ``|flame - moth| + flame``.
    """
    moth = np.asarray(moth, dtype=float)
    flame = np.asarray(flame, dtype=float)
    dist = np.abs(flame - moth)
    return dist * np.exp(shape * np.asarray(t)) * np.cos(2.0 * np.pi * np.asarray(t)) + flame


class _MfoStepper:
    def __init__(self, keys, fitness, power, cfg, rng, evaluate):
        self.pop, self.r, self.c = keys.shape
        self.dim = self.r * self.c
        self.cfg = cfg
        self.rng = rng
        self.evaluate = evaluate
        self.keys = keys
        self.fitness = fitness
        self.power = power
        order = np.argsort(fitness, kind="stable")
        self.flame_keys = keys.reshape(self.pop, self.dim)[order].copy()
        self.flame_fit = fitness[order].copy()

    def step(self, t: int):
        iters = max(self.cfg.max_iters, 1)
        flame_no = max(1, round(self.pop - t * (self.pop - 1) / iters))

        flat = self.keys.reshape(self.pop, self.dim)
        flame_idx = np.minimum(np.arange(self.pop), flame_no - 1)
        flames = self.flame_keys[flame_idx]
        span = self.cfg.spiral_t_max - self.cfg.spiral_t_min
        path_t = self.cfg.spiral_t_min + span * self.rng.random((self.pop, self.dim))
        self.keys = np.clip(
            spiral_step(flat, flames, self.cfg.spiral_shape, path_t), 0.0, KEY_MAX
        ).reshape(self.pop, self.r, self.c)
        self.fitness, self.power = self.evaluate(self.keys)

        # flames are the best pop-size solutions seen so far
        pool_keys = np.concatenate(
            [self.flame_keys, self.keys.reshape(self.pop, self.dim)]
        )
        pool_fit = np.concatenate([self.flame_fit, self.fitness])
        order = np.argsort(pool_fit, kind="stable")[: self.pop]
        self.flame_keys = pool_keys[order].copy()
        self.flame_fit = pool_fit[order].copy()
        return self.keys, self.fitness, self.power


def run_mfo(
    field: IrradianceField,
    weights: FitnessWeights = FitnessWeights(),
    cfg: OptimizerConfig = OptimizerConfig(),
) -> tuple[Candidate, ConvergenceTrace]:
    return run_search(field, weights, cfg, _MfoStepper, "mfo")
