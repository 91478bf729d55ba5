"""Canonical 9x9 shading scenarios.

The four benchmark patterns (short-wide, long-narrow, short-narrow,
long-wide) are reconstructions: the published figures are not available
as data, and several published tables are internally inconsistent, so the
grids below were designed to reproduce every self-consistent published
number exactly -- the TCT row currents and global peaks where stated, the
irradiance levels of each pattern, the shaded-cell fractions, and above
all the best reconfigured power, which for each grid below is the *true*
optimum over all column permutations (certified by exhaustive/MILP search
in the test suite).

Values are irradiance strengths in tenths (0.9 == 900 W/m²).
"""

from __future__ import annotations

import numpy as np

from .arrays import IrradianceField, ShadingCase

_UNSHADED = 9  # 900 W/m² full-sun level shared by all four patterns


def _grid(rows: list[list[int]]) -> IrradianceField:
    return IrradianceField.from_strengths(np.asarray(rows, dtype=float) / 10.0)


def _short_wide() -> ShadingCase:
    # Rows 1-5 at full sun; row 6 partially at 600; rows 7-9 heavily shaded
    # with 600/400/200.  Row currents: (8.1 x5, 6.6, 3.6 x3) I_m.
    rows = [[_UNSHADED] * 9 for _ in range(5)]
    rows.append([6, 6, 6, 6, 6, 9, 9, 9, 9])
    for _ in range(3):
        rows.append([6, 4, 4, 4, 4, 4, 4, 4, 2])
    return ShadingCase(
        name="short-wide",
        field=_grid(rows),
        description="Lower third of the array shaded at 600/400/200 W/m²; "
        "about 40% of modules affected.",
        best_known_power=56.7,
        reference_improvement_pct=34.96,
        reference_tct_consistent=True,
        notes="Reference best-arrangement table lists intermediate rows that "
        "contradict its own current listing; the table is recomputed from "
        "row currents here. Reference improvement (34.96%) does not follow "
        "from the published powers 56.7/40.5; recomputed value reported.",
    )


def _long_narrow() -> ShadingCase:
    # Two left columns shaded over rows 2-9 at 600/400/300: a tall, narrow
    # shadow covering one fifth of the array.
    rows = [[_UNSHADED] * 9 for _ in range(9)]
    column = [3, 3, 3, 4, 4, 6, 6, 6]
    for j in (0, 1):
        for i, v in enumerate(column):
            rows[i + 1][j] = v
    return ShadingCase(
        name="long-narrow",
        field=_grid(rows),
        description="Columns 1-2 shaded over rows 2-9 at 600/400/300 W/m²; "
        "one fifth of modules affected.",
        best_known_power=63.9,
        reference_improvement_pct=1.93,
        reference_tct_consistent=False,
        notes="Reference TCT table for this pattern repeats another case's "
        "currents and violates P = I x V; grid reconstructed from the "
        "self-consistent best power 63.9.",
    )


def _short_narrow() -> ShadingCase:
    # Small block in the lower-left corner at 600/400: the mildest pattern.
    rows = [[_UNSHADED] * 9 for _ in range(9)]
    for i in (5, 6):
        rows[i][0] = 6
        rows[i][1] = 4
    for i in (7, 8):
        for j in range(5):
            rows[i][j] = 6
        rows[i][5] = 4
    return ShadingCase(
        name="short-narrow",
        field=_grid(rows),
        description="Small lower-left block shaded at 600/400 W/m²; "
        "the mildest pattern.",
        best_known_power=65.7,
        reference_improvement_pct=7.28,
        reference_tct_consistent=True,
        notes="Reference best-arrangement intermediates are inconsistent "
        "with the cell inventory; recomputed here. Reference improvement "
        "(7.28%) does not follow from the published powers 65.7/54.9.",
    )


def _long_wide() -> ShadingCase:
    # Dominant shadow over two thirds of the array at 600/500/400/200.
    rows = [[_UNSHADED] * 9 for _ in range(3)]
    rows.append([2, 2, 5, 5, 5, 5, 5, 5, 4])
    rows.append([2, 2, 5, 5, 5, 5, 5, 5, 4])
    rows.append([5, 5, 2, 2, 5, 5, 5, 5, 5])
    rows.append([5, 5, 5, 5, 5, 5, 5, 5, 4])
    rows.append([5, 5, 5, 5, 5, 5, 5, 5, 4])
    rows.append([5, 5, 5, 5, 5, 6, 9, 9, 9])
    return ShadingCase(
        name="long-wide",
        field=_grid(rows),
        description="Rows 4-9 shaded at 600/500/400/200 W/m²; 63% of "
        "modules affected, the heaviest pattern.",
        best_known_power=49.5,
        reference_improvement_pct=24.09,
        reference_tct_consistent=False,
        notes="Reference TCT table for this pattern repeats another case's "
        "currents and violates P = I x V; grid reconstructed from the "
        "self-consistent best power 49.5.",
    )


_BUILDERS = {
    "short-wide": _short_wide,
    "long-narrow": _long_narrow,
    "short-narrow": _short_narrow,
    "long-wide": _long_wide,
}

#: Accepted aliases (case1..case4 follow the reference ordering).
CASE_ALIASES = {
    "case1": "short-wide",
    "case2": "long-narrow",
    "case3": "short-narrow",
    "case4": "long-wide",
    "1": "short-wide",
    "2": "long-narrow",
    "3": "short-narrow",
    "4": "long-wide",
}

CASE_NAMES = tuple(_BUILDERS)

#: Overall mean improvement claimed against the TCT baseline (abstract-level
#: figure); recomputed and flagged by the experiment report.
REFERENCE_OVERALL_IMPROVEMENT_PCT = 18.53
#: Claimed improvement against the Sudoku baseline; that baseline is out of
#: scope here, so the figure is reported as unverifiable.
REFERENCE_SUDOKU_IMPROVEMENT_PCT = 4.93


def canonical_name(name: str) -> str:
    key = name.strip().lower()
    key = CASE_ALIASES.get(key, key)
    if key not in _BUILDERS:
        known = ", ".join(sorted(_BUILDERS) + sorted(CASE_ALIASES))
        raise KeyError(f"unknown shading case {name!r}; known: {known}")
    return key


def builtin_case(name: str) -> ShadingCase:
    """Return a canonical shading case by name (aliases case1..case4 work)."""
    return _BUILDERS[canonical_name(name)]()
