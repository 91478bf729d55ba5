"""Minimization objective for reconfiguration search.

The scalar fitness is ``scale / (sum_p + w_dev / (c_t + floor) + p_wb * w_pwb)``
where, for a candidate's row currents (in I_m multiples):

* ``sum_p``  -- total row power ``sum_i I_i * V_m`` (reconfiguration-invariant),
* ``c_t``    -- row-current deviation ``sum_i (max_k I_k - I_i)``,
* ``p_wb``   -- no-bypass power ``min_i I_i * r * V_m``.

Lower fitness is better; a perfectly balanced high-power candidate drives
the deviation term's contribution ``w_dev / (c_t + floor)`` large and the
fitness toward zero.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import (
    IrradianceField,
    K_SCALE,
    Reconfiguration,
    effective_field,
    row_current_units,
)


@dataclass(frozen=True)
class FitnessWeights:
    """Weights of the minimization objective (all in V_m·I_m based units)."""

    scale: float = 1000.0
    deviation_weight: float = 1.0
    no_bypass_weight: float = 1.0
    deviation_floor: float = 1e-9

    def __post_init__(self):
        if not (self.scale > 0):
            raise ValueError("scale must be positive")
        if self.deviation_weight < 0 or self.no_bypass_weight < 0:
            raise ValueError("weights must be non-negative")
        if not (self.deviation_floor > 0):
            raise ValueError("deviation_floor must be positive")


@dataclass(frozen=True)
class FitnessBreakdown:
    """Scalar fitness plus its denominator terms."""

    sum_p: float
    c_t: float
    p_wb: float
    fitness: float


def sum_p(currents, v_m: float = 1.0) -> float:
    """Total row power ``sum_i I_i * V_i`` with ``V_i = V_m`` for every row."""
    currents = np.asarray(currents, dtype=float)
    if currents.size == 0:
        raise ValueError("need at least one row")
    return float(currents.sum() * v_m)


def c_t(currents) -> float:
    """Row-current deviation from the candidate's own maximum row current."""
    currents = np.asarray(currents, dtype=float)
    if currents.size == 0:
        raise ValueError("need at least one row")
    return float(currents.max() * currents.size - currents.sum())


def fitness_terms(current_units: np.ndarray, weights: FitnessWeights):
    """Vectorized fitness over ``(..., r)`` integer row-current units.

    Returns ``(fitness, p_wb, sum_p, c_t)`` arrays of shape ``(...)``, in
    V_m·I_m units.  Raises if any candidate's denominator is non-positive.
    """
    units = np.asarray(current_units, dtype=np.int64)
    r = units.shape[-1]
    total = units.sum(axis=-1)
    sums = total / K_SCALE
    devs = (units.max(axis=-1) * r - total) / K_SCALE
    powers = units.min(axis=-1) * r / K_SCALE
    denom = (
        sums
        + weights.deviation_weight / (devs + weights.deviation_floor)
        + powers * weights.no_bypass_weight
    )
    if np.any(denom <= 0):
        raise ValueError("fitness denominator is non-positive; check weights")
    return weights.scale / denom, powers, sums, devs


def evaluate(
    field: IrradianceField,
    cfg: Reconfiguration,
    weights: FitnessWeights = FitnessWeights(),
) -> FitnessBreakdown:
    """Fitness of one reconfiguration of a field, with its breakdown."""
    units = row_current_units(effective_field(field, cfg))
    fit, p_wb, sums, devs = fitness_terms(units[None, :], weights)
    return FitnessBreakdown(
        sum_p=float(sums[0]),
        c_t=float(devs[0]),
        p_wb=float(p_wb[0]),
        fitness=float(fit[0]),
    )
