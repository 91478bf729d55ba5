"""Imperialist competition: the best candidates rule empires of colonies,
colonies assimilate toward their imperialist, and weak empires lose
colonies to strong ones until they collapse."""

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


class _Empire:
    __slots__ = ("imp_key", "imp_fit", "imp_power", "colonies")

    def __init__(self, imp_key, imp_fit, imp_power):
        self.imp_key = imp_key
        self.imp_fit = imp_fit
        self.imp_power = imp_power
        self.colonies: list[int] = []  # indices into the colony arrays


class _IcaStepper:
    def __init__(self, keys, fitness, power, cfg, rng, evaluate):
        self.pop, self.r, self.c = keys.shape
        self.dim = self.r * self.c
        self.cfg = cfg
        self.rng = rng
        self.evaluate = evaluate

        flat = keys.reshape(self.pop, self.dim)
        order = np.argsort(fitness, kind="stable")
        n_imp = max(1, min(cfg.n_imperialists, self.pop - 1))
        self.empires = [
            _Empire(flat[i].copy(), float(fitness[i]), float(power[i]))
            for i in order[:n_imp]
        ]
        col_idx = order[n_imp:]
        self.col_keys = flat[col_idx].copy()
        self.col_fit = fitness[col_idx].copy()
        self.col_power = power[col_idx].copy()
        self.col_empire = np.zeros(len(col_idx), dtype=int)
        self._allocate_initial_colonies()

    def _allocate_initial_colonies(self):
        costs = np.array([e.imp_fit for e in self.empires])
        strength = costs.max() - costs
        if strength.sum() <= 0:
            strength = np.ones_like(strength)
        shares = strength / strength.sum()
        n_col = len(self.col_fit)
        counts = np.floor(shares * n_col).astype(int)
        # distribute the remainder to the strongest empires
        for i in np.argsort(-shares, kind="stable"):
            if counts.sum() >= n_col:
                break
            counts[i] += 1
        perm = self.rng.permutation(n_col)
        pos = 0
        for e_idx, count in enumerate(counts):
            chunk = perm[pos : pos + count]
            self.col_empire[chunk] = e_idx
            self.empires[e_idx].colonies = list(chunk)
            pos += count

    def _evaluate_colonies(self):
        fit, power = self.evaluate(self.col_keys.reshape(-1, self.r, self.c))
        self.col_fit, self.col_power = fit, power

    def _assimilate(self):
        imp = np.stack([self.empires[e].imp_key for e in self.col_empire])
        pull = self.rng.random((len(self.col_fit), self.dim))
        self.col_keys += self.cfg.assimilation_coeff * pull * (imp - self.col_keys)
        revolve = self.rng.random(len(self.col_fit)) < self.cfg.revolution_rate
        if revolve.any():
            self.col_keys[revolve] = self.rng.random((int(revolve.sum()), self.dim))
        np.clip(self.col_keys, 0.0, KEY_MAX, out=self.col_keys)

    def _swap_ascended_colonies(self):
        for empire in self.empires:
            if not empire.colonies:
                continue
            best = min(empire.colonies, key=lambda i: (self.col_fit[i], i))
            if self.col_fit[best] < empire.imp_fit:
                empire.imp_key, self.col_keys[best] = (
                    self.col_keys[best].copy(),
                    empire.imp_key,
                )
                empire.imp_fit, self.col_fit[best] = (
                    float(self.col_fit[best]),
                    empire.imp_fit,
                )
                empire.imp_power, self.col_power[best] = (
                    float(self.col_power[best]),
                    empire.imp_power,
                )

    def _total_costs(self) -> np.ndarray:
        share = self.cfg.colony_power_share
        totals = []
        for empire in self.empires:
            if empire.colonies:
                mean_col = float(np.mean([self.col_fit[i] for i in empire.colonies]))
                totals.append(empire.imp_fit + share * mean_col)
            else:
                totals.append(empire.imp_fit)
        return np.array(totals)

    def _compete(self):
        if len(self.empires) < 2:
            return
        totals = self._total_costs()
        weakest = int(np.argmax(totals))
        strength = totals.max() - totals
        strength[weakest] = 0.0
        if strength.sum() <= 0:
            others = [i for i in range(len(self.empires)) if i != weakest]
            winner = others[int(self.rng.integers(len(others)))]
        else:
            cum = np.cumsum(strength / strength.sum())
            winner = int(np.searchsorted(cum, self.rng.random(), side="right"))
        loser = self.empires[weakest]
        if loser.colonies:
            victim = max(loser.colonies, key=lambda i: (self.col_fit[i], -i))
            loser.colonies.remove(victim)
            self.empires[winner].colonies.append(victim)
            self.col_empire[victim] = winner
        else:
            # collapsed empire: its imperialist becomes a colony of the winner
            self.col_keys = np.vstack([self.col_keys, loser.imp_key])
            self.col_fit = np.append(self.col_fit, loser.imp_fit)
            self.col_power = np.append(self.col_power, loser.imp_power)
            new_idx = len(self.col_fit) - 1
            self.col_empire = np.append(self.col_empire, winner)
            self.empires[winner].colonies.append(new_idx)
            del self.empires[weakest]
            self.col_empire[self.col_empire > weakest] -= 1

    def step(self, t: int):
        self._assimilate()
        self._evaluate_colonies()
        self._swap_ascended_colonies()
        self._compete()
        keys = np.vstack(
            [np.stack([e.imp_key for e in self.empires]), self.col_keys]
        ).reshape(-1, self.r, self.c)
        fit = np.concatenate(
            [np.array([e.imp_fit for e in self.empires]), self.col_fit]
        )
        power = np.concatenate(
            [np.array([e.imp_power for e in self.empires]), self.col_power]
        )
        return keys, fit, power


def run_ica(
    field: IrradianceField,
    weights: FitnessWeights = FitnessWeights(),
    cfg: OptimizerConfig = OptimizerConfig(),
) -> tuple[Candidate, ConvergenceTrace]:
    return run_search(field, weights, cfg, _IcaStepper, "ica")
