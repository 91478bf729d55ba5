"""Exhaustive ground truth for small arrays.

``brute_force`` enumerates every column-permutation reconfiguration of a
small field and returns the maximum no-bypass power, certifying optimizer
results.  Enumeration is depth-first across columns in lexicographic
permutation order, with incremental row sums and a branch-and-bound prune;
pruning is strict (bound < incumbent) so the count of optimal
configurations stays exact.

Relabeling electrical rows is a bijection on configurations that preserves
the row-current multiset, so pinning the first column to the identity
(``symmetry_reduce``) shrinks the space by a factor of r! without changing
the optimum.

``milp_best_power`` computes the same optimum through an integer linear
program, giving an independent certification route that also scales to the
9x9 benchmark grids where enumeration is infeasible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from .arrays import IrradianceField, K_SCALE, Reconfiguration
from .fitness import FitnessBreakdown, FitnessWeights, evaluate as evaluate_cfg

DEFAULT_BUDGET = 10_000_000


class OracleBudgetError(ValueError):
    """The enumeration space exceeds the configured state budget."""


@dataclass(frozen=True)
class OracleResult:
    best_power: float  # V_m·I_m units
    best_cfg: Reconfiguration
    optima_count: int
    states_explored: int
    best_breakdown: FitnessBreakdown | None = None


def search_space_size(rows: int, cols: int, symmetry_reduce: bool = True) -> int:
    return math.factorial(rows) ** (cols - (1 if symmetry_reduce else 0))


def brute_force(
    field: IrradianceField,
    weights: FitnessWeights | None = None,
    symmetry_reduce: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> OracleResult:
    """Enumerate all reconfigurations; return the maximum-power result.

    ``optima_count`` counts the configurations of the (possibly reduced)
    space attaining the best power; ``states_explored`` is that space's
    size.  Raises :class:`OracleBudgetError` when the space exceeds
    ``budget`` states.
    """
    r, c = field.rows, field.cols
    states = search_space_size(r, c, symmetry_reduce)
    if states > budget:
        raise OracleBudgetError(
            f"{states} states exceed the budget of {budget}; "
            "reduce the array size or raise the budget"
        )

    units = field.units
    identity = tuple(range(r))
    col_perms: list[list[tuple[int, ...]]] = []
    for j in range(c):
        if symmetry_reduce and j == 0:
            col_perms.append([identity])
        else:
            col_perms.append(list(permutations(range(r))))

    # suffix bounds: per-column max cell and per-column total
    col_max = units.max(axis=0)
    col_tot = units.sum(axis=0)
    suffix_max = np.concatenate([col_max[::-1].cumsum()[::-1], [0]])
    suffix_tot = np.concatenate([col_tot[::-1].cumsum()[::-1], [0]])

    best = -1
    best_count = 0
    best_assign: list[tuple[int, ...]] = []
    sums = np.zeros(r, dtype=np.int64)
    chosen: list[tuple[int, ...]] = [identity] * c

    def descend(j: int):
        nonlocal best, best_count, best_assign
        if j == c:
            m = int(sums.min())
            if m > best:
                best = m
                best_count = 1
                best_assign = list(chosen)
            elif m == best:
                best_count += 1
            return
        # optimistic bound on the final minimum row current
        head = int((sums + suffix_max[j]).min())
        mean = int((sums.sum() + suffix_tot[j]) // r)
        if min(head, mean) < best:
            return
        col = units[:, j]
        for perm in col_perms[j]:
            chosen[j] = perm
            sums_add = col[list(perm)]
            sums.__iadd__(sums_add)
            descend(j + 1)
            sums.__isub__(sums_add)

    descend(0)

    assign = np.array(best_assign, dtype=np.int64).T
    cfg = Reconfiguration(assign)
    breakdown = evaluate_cfg(field, cfg, weights) if weights is not None else None
    return OracleResult(
        best_power=best * r / K_SCALE,
        best_cfg=cfg,
        optima_count=best_count,
        states_explored=states,
        best_breakdown=breakdown,
    )


def milp_best_power(field: IrradianceField, time_limit: float = 120.0) -> float:
    """Certified optimum no-bypass power via mixed-integer programming.

    Binary x[j, p, e] assigns the module of physical row p, column j to
    electrical row e; each column's assignment is a permutation matrix and
    the minimum row current t is maximized.
    """
    from scipy.optimize import Bounds, LinearConstraint, milp
    from scipy.sparse import lil_matrix

    units = field.units
    r, c = field.rows, field.cols
    nx = c * r * r
    nv = nx + 1  # + the min-current variable t

    def var(j: int, p: int, e: int) -> int:
        return j * r * r + p * r + e

    perm = lil_matrix((2 * c * r, nv))
    row = 0
    for j in range(c):
        for e in range(r):
            for p in range(r):
                perm[row, var(j, p, e)] = 1
            row += 1
        for p in range(r):
            for e in range(r):
                perm[row, var(j, p, e)] = 1
            row += 1

    floor = lil_matrix((r, nv))
    for e in range(r):
        for j in range(c):
            for p in range(r):
                floor[e, var(j, p, e)] = int(units[p, j])
        floor[e, nx] = -1

    objective = np.zeros(nv)
    objective[nx] = -1.0
    integrality = np.ones(nv)
    integrality[nx] = 0
    upper = np.ones(nv)
    upper[nx] = float(units.sum())
    result = milp(
        c=objective,
        constraints=[
            LinearConstraint(perm.tocsr(), 1, 1),
            LinearConstraint(floor.tocsr(), 0, np.inf),
        ],
        integrality=integrality,
        bounds=Bounds(0, upper),
        options={"time_limit": time_limit},
    )
    if not result.success:
        raise RuntimeError(f"optimality certification failed: {result.message}")
    return round(-result.fun) * r / K_SCALE
