"""Total-cross-tied (TCT) array model: irradiance fields, reconfigurations,
row currents, global-peak tables.

A TCT array parallels all modules of a row and stacks the rows in series,
so each electrical row carries the sum of its modules' currents and the
array voltage is the sum of the surviving row voltages.  All results are
expressed in multiples of the module nominal current ``I_m`` and nominal
voltage ``V_m``.

Irradiance strengths are stored internally as int64 *micro-strengths*
(``k * 10**6``), so the tenths-valued arithmetic of the canonical shading
cases is exact: row currents, powers and insolation totals never suffer
float drift.  Floats appear only at the reporting/fitness boundary.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

#: Internal fixed-point scale for irradiance strengths.
K_SCALE = 10**6

#: Absolute tolerance when quantizing user-supplied strengths to micro-units.
_QUANT_TOL = 1e-6


def _quantize(values: np.ndarray) -> np.ndarray:
    """Convert float strengths to int64 micro-strengths, validating range."""
    values = np.asarray(values, dtype=float)
    if values.ndim != 2 or values.size == 0:
        raise ValueError("irradiance grid must be a non-empty 2-D array")
    if not np.all(np.isfinite(values)):
        raise ValueError("irradiance strengths must be finite")
    if np.any(values < 0):
        raise ValueError("irradiance strengths must be non-negative")
    units = np.rint(values * K_SCALE).astype(np.int64)
    if np.any(np.abs(units / K_SCALE - values) > _QUANT_TOL):
        raise ValueError(
            "irradiance strengths finer than 1e-6 are not representable"
        )
    return units


@dataclass(frozen=True)
class IrradianceField:
    """An r x c grid of irradiance strengths ``k = G / G0``.

    ``units`` holds int64 micro-strengths; use :meth:`strengths` for the
    float view.  Instances are immutable and safe to share.
    """

    units: np.ndarray

    def __post_init__(self):
        units = np.asarray(self.units, dtype=np.int64)
        if units.ndim != 2 or units.size == 0:
            raise ValueError("field must be a non-empty 2-D grid")
        if np.any(units < 0):
            raise ValueError("irradiance strengths must be non-negative")
        units.setflags(write=False)
        object.__setattr__(self, "units", units)

    @classmethod
    def from_strengths(cls, values: Sequence[Sequence[float]]) -> "IrradianceField":
        """Build a field from dimensionless strengths (``k`` values)."""
        return cls(_quantize(np.asarray(values, dtype=float)))

    @classmethod
    def from_irradiance(
        cls, wpm2: Sequence[Sequence[float]], g0: float = 1000.0
    ) -> "IrradianceField":
        """Build a field from irradiance in W/m², dividing by ``g0``."""
        if not (g0 > 0):
            raise ValueError("g0 must be positive")
        return cls.from_strengths(np.asarray(wpm2, dtype=float) / g0)

    @classmethod
    def from_csv(cls, path: str | Path, g0: float = 1000.0) -> "IrradianceField":
        """Load a pattern file: r lines of c comma-separated W/m² values."""
        rows = []
        with open(path, newline="") as fh:
            for line in csv.reader(fh):
                if not line or all(not cell.strip() for cell in line):
                    continue
                rows.append([float(cell) for cell in line])
        if not rows:
            raise ValueError(f"pattern file {path} is empty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError(f"pattern file {path} is not rectangular")
        return cls.from_irradiance(rows, g0=g0)

    @property
    def rows(self) -> int:
        return self.units.shape[0]

    @property
    def cols(self) -> int:
        return self.units.shape[1]

    @property
    def strengths(self) -> np.ndarray:
        """Float view of the grid (dimensionless strengths)."""
        return self.units / K_SCALE

    def insolation_units(self) -> int:
        return int(self.units.sum())


@dataclass(frozen=True)
class Reconfiguration:
    """Column-wise reassignment of modules to electrical rows.

    ``assign[i][j]`` is the physical row whose module occupies electrical
    row ``i`` of column ``j``; every column must be a permutation of
    ``0..r-1``.  ``assign[i][j] == i`` everywhere is the TCT baseline.
    """

    assign: np.ndarray

    def __post_init__(self):
        assign = np.asarray(self.assign, dtype=np.int64)
        if assign.ndim != 2 or assign.size == 0:
            raise ValueError("assignment must be a non-empty 2-D grid")
        r = assign.shape[0]
        expected = np.arange(r)
        for j in range(assign.shape[1]):
            if not np.array_equal(np.sort(assign[:, j]), expected):
                raise ValueError(f"column {j} is not a permutation of 0..{r - 1}")
        assign.setflags(write=False)
        object.__setattr__(self, "assign", assign)

    @classmethod
    def identity(cls, rows: int, cols: int) -> "Reconfiguration":
        assign = np.tile(np.arange(rows, dtype=np.int64)[:, None], (1, cols))
        return cls(assign)

    @property
    def rows(self) -> int:
        return self.assign.shape[0]

    @property
    def cols(self) -> int:
        return self.assign.shape[1]

    def is_identity(self) -> bool:
        return bool(np.all(self.assign == np.arange(self.rows)[:, None]))


@dataclass(frozen=True)
class GpTableRow:
    """One line of a global-peak (bypass) table.

    ``power`` is ``None`` for repeated current levels, mirroring the dashes
    of the reference tables; when present it equals
    ``current * active_rows`` (in V_m·I_m units).
    """

    row_label: int
    current: float
    active_rows: int
    power: float | None


@dataclass(frozen=True)
class ShadingCase:
    """A named shading scenario: an irradiance field plus benchmark metadata."""

    name: str
    field: IrradianceField
    description: str = ""
    best_known_power: float | None = None
    reference_improvement_pct: float | None = None
    reference_tct_consistent: bool = True
    notes: str = ""


def effective_field(field: IrradianceField, cfg: Reconfiguration) -> IrradianceField:
    """Apply the column permutations: ``out[i][j] = k[assign[i][j]][j]``."""
    if cfg.assign.shape != field.units.shape:
        raise ValueError(
            f"shape mismatch: field {field.units.shape} vs assignment {cfg.assign.shape}"
        )
    cols = np.arange(field.cols)
    return IrradianceField(field.units[cfg.assign, cols])


def row_current_units(field: IrradianceField) -> np.ndarray:
    """Exact row currents as int64 micro-multiples of I_m."""
    return field.units.sum(axis=1)


def row_currents(field: IrradianceField, i_m: float = 1.0) -> np.ndarray:
    """Row currents ``I_i = sum_j k_ij * I_m`` (floats)."""
    return row_current_units(field) / K_SCALE * i_m


def kcl_residual(currents: Sequence[float]) -> np.ndarray:
    """Node current residuals ``I_i - I_{i+1}`` between adjacent rows.

    Diagnostic only: at a common operating current all entries are the
    mismatch that bypass diodes would have to absorb.
    """
    currents = np.asarray(currents)
    if currents.shape[0] < 2:
        raise ValueError("need at least two rows for node residuals")
    return currents[:-1] - currents[1:]


def array_power_wb(currents: Sequence[float], v_m: float = 1.0) -> float:
    """No-bypass array power: min row current x row count x V_m."""
    currents = np.asarray(currents)
    if currents.size == 0:
        raise ValueError("need at least one row")
    return float(currents.min() * currents.shape[0] * v_m)


def _current_units_from(currents: Sequence[float]) -> np.ndarray:
    """Accept either float I_m multiples or exact micro-units."""
    arr = np.asarray(currents)
    if np.issubdtype(arr.dtype, np.integer):
        return arr.astype(np.int64)
    return np.rint(arr * K_SCALE).astype(np.int64)


def gp_table(currents: Sequence[float], v_m: float = 1.0) -> list[GpTableRow]:
    """Bypass table: rows in ascending-current bypass order.

    Rows with the lowest current are bypassed first; at each distinct
    current level the array can run ``active_rows = #{i : I_i >= level}``
    rows in series at that current, giving ``power = level * active_rows``.
    Repeated levels after the first carry no power entry.
    """
    units = _current_units_from(currents)
    if units.size == 0:
        raise ValueError("need at least one row")
    # ascending current; ties listed by descending row label, as bypassing
    # proceeds from the bottom of the array upward
    order = sorted(range(len(units)), key=lambda i: (units[i], -i))
    rows: list[GpTableRow] = []
    seen: set[int] = set()
    for i in order:
        level = int(units[i])
        active = int((units >= level).sum())
        power = None
        if level not in seen:
            seen.add(level)
            power = level * active / K_SCALE * v_m
        rows.append(
            GpTableRow(
                row_label=i + 1,
                current=level / K_SCALE,
                active_rows=active,
                power=power,
            )
        )
    return rows


def gp_power(currents: Sequence[float], v_m: float = 1.0) -> float:
    """Global peak: the maximum power over all bypass levels."""
    return max(row.power for row in gp_table(currents, v_m) if row.power is not None)


def total_insolation(field: IrradianceField) -> float:
    """Sum of all irradiance strengths (conserved under reconfiguration)."""
    return field.insolation_units() / K_SCALE
