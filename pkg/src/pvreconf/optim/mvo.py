"""Multi-verse search: roulette-selected key exchange between universes
(white/black holes) plus wormhole teleportation toward the best universe,
with teleport probability rising and travel distance shrinking over time."""

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


class _MvoStepper:
    def __init__(self, keys, fitness, power, cfg, rng, evaluate):
        self.pop, self.r, self.c = keys.shape
        self.dim = self.r * self.c
        self.cfg = cfg
        self.rng = rng
        self.evaluate = evaluate
        self.keys = keys
        self.fitness = fitness
        self.power = power

    def step(self, t: int):
        iters = max(self.cfg.max_iters, 1)
        wep = self.cfg.wep_min + t * (self.cfg.wep_max - self.cfg.wep_min) / iters
        tdr = 1.0 - (t / iters) ** (1.0 / self.cfg.tdr_exponent)

        order = np.argsort(self.fitness, kind="stable")
        flat = self.keys.reshape(self.pop, self.dim)[order].copy()
        fit_sorted = self.fitness[order]
        best = flat[0].copy()

        # worse universes are likelier to receive; donors drawn by roulette
        # weighted toward better (lower-cost) universes
        norm = fit_sorted / np.linalg.norm(fit_sorted)
        receive = self.rng.random((self.pop - 1, self.dim)) < norm[1:, None]
        strength = fit_sorted.max() - fit_sorted
        if strength.sum() <= 0:
            strength = np.ones_like(strength)
        cum = np.cumsum(strength / strength.sum())
        donors = np.searchsorted(
            cum, self.rng.random((self.pop - 1, self.dim)), side="right"
        )
        donated = np.take_along_axis(flat, donors, axis=0)
        body = np.where(receive, donated, flat[1:])

        teleport = self.rng.random((self.pop - 1, self.dim)) < wep
        toward = self.rng.random((self.pop - 1, self.dim)) < 0.5
        step_len = tdr * self.rng.random((self.pop - 1, self.dim))
        target = np.where(toward, best[None, :] + step_len, best[None, :] - step_len)
        body = np.where(teleport, target, body)

        self.keys = np.clip(np.vstack([best[None, :], body]), 0.0, KEY_MAX).reshape(
            self.pop, self.r, self.c
        )
        self.fitness, self.power = self.evaluate(self.keys)
        return self.keys, self.fitness, self.power


def run_mvo(
    field: IrradianceField,
    weights: FitnessWeights = FitnessWeights(),
    cfg: OptimizerConfig = OptimizerConfig(),
) -> tuple[Candidate, ConvergenceTrace]:
    return run_search(field, weights, cfg, _MvoStepper, "mvo")
