"""Single-diode electrical model of one PV module, calibrated to datasheet
values.

The model is the classical current source + diode circuit with optional
series/shunt resistances.  The default operating mode is the ideal one
(``Rs = 0``, ``Rsh = inf``), which is all the array-level arithmetic needs;
the implicit full-circuit equation is also solvable for completeness.

The diode factor ``n`` is the lumped product of the cell ideality factor
and the number of series-connected cells, so the thermal voltage scale is
``n * k * T / q`` for the whole module.  The default ``n = 45`` places the
modeled maximum power point within a few percent of the datasheet's
nominal 17.64 V / 80 W.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

ELECTRON_CHARGE = 1.602176634e-19  # C
BOLTZMANN = 1.380649e-23  # J/K
T_STANDARD_K = 298.15  # 25 °C

#: Default lumped diode factor (series cells x ideality), chosen so the
#: modeled MPP voltage lands within 5% of the datasheet nominal voltage.
DEFAULT_DIODE_FACTOR = 45.0


class DiodeSolveError(RuntimeError):
    """Implicit circuit solve failed; carries the best residual (A)."""

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (residual {residual:.3e} A)")
        self.residual = residual


@dataclass(frozen=True)
class ModuleSpec:
    """Datasheet constants of one PV module at standard test conditions."""

    power_rated: float = 80.0  # W
    v_oc: float = 21.24  # V
    i_sc: float = 4.74  # A
    v_nominal: float = 17.64  # V
    i_nominal: float = 4.54  # A
    g_ref: float = 1000.0  # W/m²
    t_ref_c: float = 25.0  # °C

    def __post_init__(self):
        if not (0 < self.v_nominal < self.v_oc):
            raise ValueError("need 0 < v_nominal < v_oc")
        if not (0 < self.i_nominal < self.i_sc):
            raise ValueError("need 0 < i_nominal < i_sc")
        if self.power_rated <= 0 or self.g_ref <= 0:
            raise ValueError("power_rated and g_ref must be positive")

    @property
    def t_ref_k(self) -> float:
        return self.t_ref_c + 273.15


DEFAULT_MODULE = ModuleSpec()


@dataclass(frozen=True)
class CellParams:
    """Electrical parameters of the diode model.

    ``r_shunt = inf`` together with ``r_series = 0`` selects the ideal mode
    in which the terminal current is explicit in the voltage.
    """

    i0: float  # reverse saturation current, A
    n: float  # lumped diode factor (series cells x ideality)
    q: float = ELECTRON_CHARGE
    boltzmann: float = BOLTZMANN
    temperature: float = T_STANDARD_K  # K
    t_ref: float = T_STANDARD_K  # K
    r_series: float = 0.0  # ohm
    r_shunt: float = math.inf  # ohm
    alpha_temp: float = 0.0  # 1/K

    def __post_init__(self):
        if self.i0 <= 0:
            raise ValueError("i0 must be positive")
        if self.r_series < 0 or self.r_shunt <= 0:
            raise ValueError("need r_series >= 0 and r_shunt > 0")
        if self.temperature <= 0:
            raise ValueError("temperature must be positive")
        if self.thermal_voltage <= 0:
            raise ValueError("thermal voltage must be positive")

    @property
    def thermal_voltage(self) -> float:
        return self.n * self.boltzmann * self.temperature / self.q

    @property
    def is_ideal(self) -> bool:
        return self.r_series == 0.0 and math.isinf(self.r_shunt)


@dataclass(frozen=True)
class IVPoint:
    v: float
    i: float
    p: float


def calibrate(spec: ModuleSpec, n: float = DEFAULT_DIODE_FACTOR) -> CellParams:
    """Ideal-mode parameters reproducing (0, Isc) and (Voc, 0) exactly.

    Inverting the open-circuit condition gives
    ``i0 = Isc / (exp(Voc / Vt) - 1)`` with ``Vt = n k T / q``.
    """
    if not (n > 0):
        raise ValueError("diode factor must be positive")
    vt = n * BOLTZMANN * spec.t_ref_k / ELECTRON_CHARGE
    i0 = spec.i_sc / math.expm1(spec.v_oc / vt)
    return CellParams(i0=i0, n=n, temperature=spec.t_ref_k, t_ref=spec.t_ref_k)


def photocurrent(
    spec: ModuleSpec, params: CellParams, g: float, t: float | None = None
) -> float:
    """Light-generated current at irradiance ``g`` (W/m²) and temperature ``t`` (K).

    Linear in ``g / g_ref`` with a first-order temperature correction; the
    ``(Rs + Rsh) / Rsh`` factor degenerates to 1 in ideal mode.
    """
    if not math.isfinite(g) or g < 0:
        raise ValueError("irradiance must be finite and non-negative")
    if t is None:
        t = params.temperature
    if not math.isfinite(t):
        raise ValueError("temperature must be finite")
    if math.isinf(params.r_shunt):
        res_factor = 1.0
    else:
        res_factor = (params.r_series + params.r_shunt) / params.r_shunt
    thermal = 1.0 + params.alpha_temp * (t - params.t_ref)
    return spec.i_sc * (g / spec.g_ref) * thermal * res_factor


def _ideal_current(params: CellParams, i_ph: float, v: float) -> float:
    return i_ph - params.i0 * math.expm1(v / params.thermal_voltage)


def i_at_voltage(
    params: CellParams,
    spec: ModuleSpec,
    g: float,
    t: float | None = None,
    v: float = 0.0,
    tol: float = 1e-9,
    max_iter: int = 100,
) -> float:
    """Terminal current at voltage ``v``.

    Ideal mode is explicit.  In full mode the implicit circuit equation is
    solved for I by bisection (the residual is strictly decreasing in I);
    failure to bracket or converge raises :class:`DiodeSolveError`.
    """
    if not math.isfinite(v) or v < 0 or v > spec.v_oc * 1.05:
        raise ValueError(f"voltage must lie in [0, {spec.v_oc * 1.05:.3f}]")
    i_ph = photocurrent(spec, params, g, t)
    if params.is_ideal:
        return _ideal_current(params, i_ph, v)

    vt = params.thermal_voltage

    def residual(i: float) -> float:
        vd = v + params.r_series * i
        return i_ph - params.i0 * math.expm1(vd / vt) - vd / params.r_shunt - i

    # bracket extends slightly below zero so voltages just above Voc solve
    lo, hi = -0.25 * spec.i_sc, i_ph + 1e-12
    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo < 0 or f_hi > 0:
        raise DiodeSolveError(
            "could not bracket the operating current", min(abs(f_lo), abs(f_hi))
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = residual(mid)
        if abs(f_mid) <= tol or (hi - lo) <= tol:
            return mid
        if f_mid > 0:
            lo = mid
        else:
            hi = mid
    raise DiodeSolveError("bisection did not converge", residual(0.5 * (lo + hi)))


def iv_curve(
    params: CellParams,
    spec: ModuleSpec,
    g: float,
    t: float | None = None,
    n_points: int = 100,
) -> list[IVPoint]:
    """Sample the I-V / P-V curve at ``n_points`` voltages uniform on [0, Voc]."""
    if n_points < 2:
        raise ValueError("need at least two curve points")
    points = []
    for v in np.linspace(0.0, spec.v_oc, n_points):
        i = i_at_voltage(params, spec, g, t, float(v))
        points.append(IVPoint(v=float(v), i=i, p=float(v) * i))
    return points
