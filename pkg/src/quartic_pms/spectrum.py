"""Zero- and low-temperature spectral quantities of the PMS model."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ._solvers import damped_fixed_point
from .effective_frequency import OscillatorParams, b_derivative, b_function
from .errors import DegeneracyError, DomainError
from .pms import partition_function
from .specialfn import QuadratureSpec, integrate_decaying

__all__ = [
    "SpectralSummary",
    "FiniteTemperatureEnergies",
    "omega_bar",
    "bar_integrals",
    "ground_energy",
    "ground_energy_at",
    "gap_quantities",
    "stabilized_log_partition",
    "temperature_gap",
    "finite_temperature_energies",
]

BAR_QUADRATURE = QuadratureSpec(rel_tol=1e-12, max_refinements=400)

# Above this value of beta * gap the subtraction Z - exp(-beta E0) has lost
# too many digits; the two-term low-temperature form is used instead.
ASYMPTOTIC_GAP_EXPONENT = 18.0


@dataclass(frozen=True)
class SpectralSummary:
    g: float
    omega_bar: float
    e0: float
    delta: float
    c_bar: float
    u_g: float
    e1: float
    i_bar: float
    v_bar: float

    @property
    def gap(self) -> float:
        return self.e1 - self.e0


class FiniteTemperatureEnergies(NamedTuple):
    e0_beta: float
    e1_beta: float
    gap_beta: float


def omega_bar(params: OscillatorParams, tol: float = 1e-12) -> float:
    """Zero-temperature effective frequency: w = omega sqrt(B(2 g w / omega^4))."""
    if not tol > 0:
        raise DomainError("tol must be positive")
    w0 = params.omega
    if params.g == 0:
        return w0
    scale = 2.0 * params.g / w0**4

    def update(w):
        return w0 * math.sqrt(b_function(scale * w))

    hi = w0 * (1.0 + 10.0 * (2.0 * params.g) ** (1.0 / 3.0))
    # Start from the strong-coupling estimate, clipped into the bracket.
    start = min(max(w0, w0 * (1.479337559594319 * math.sqrt(scale * w0)) ** 0.5), hi)
    w, _, _ = damped_fixed_point(update, start, w0, hi, tol)
    return w


def bar_integrals(params: OscillatorParams, w_bar: float) -> tuple[float, float]:
    """(I_bar, V_bar): integrals of exp(-2V/w) and V exp(-2V/w) over the line."""
    tau = 2.0 / w_bar
    width = params.width(tau)

    def weight(x):
        return np.exp(-tau * params.potential(x))

    i_bar = integrate_decaying(weight, BAR_QUADRATURE, even=True, scale=width)
    v_bar = integrate_decaying(lambda x: params.potential(x) * weight(x), BAR_QUADRATURE, even=True, scale=width)
    return i_bar, v_bar


def ground_energy_at(params: OscillatorParams, w: float) -> float:
    """E0 formula evaluated at an arbitrary frequency ``w`` in place of omega_bar."""
    i_bar, _ = bar_integrals(params, w)
    return 0.5 * w * (1.0 - math.log(math.sqrt(w / math.pi) * i_bar))


def ground_energy(params: OscillatorParams) -> float:
    """E0(g) = (w/2) [1 - ln(sqrt(w/pi) I_bar)] at w = omega_bar."""
    return ground_energy_at(params, omega_bar(params))


def gap_quantities(params: OscillatorParams) -> SpectralSummary:
    w = omega_bar(params)
    i_bar, v_bar = bar_integrals(params, w)
    log_j = math.log(math.sqrt(w / math.pi) * i_bar)
    e0 = 0.5 * w * (1.0 - log_j)
    u_g = params.g / params.omega**2 * b_derivative(2.0 * params.g * w / params.omega**4)
    denom = 1.0 - u_g / w
    if abs(denom) < 1e-12:
        raise DegeneracyError(f"c_bar has a pole at g={params.g!r} (u_g equals omega_bar)")
    c_bar = 2.0 * u_g / denom
    # Slope of the linear-in-beta subleading term of the large-beta expansion
    # of Z; note the overall w/2, which makes Delta an energy.
    delta = 0.5 * w * (1.0 + c_bar / (2.0 * w)) * (1.0 - 4.0 * v_bar / (w * i_bar) - 2.0 * log_j)
    return SpectralSummary(
        g=params.g, omega_bar=w, e0=e0, delta=delta, c_bar=c_bar, u_g=u_g,
        e1=e0 + w + delta, i_bar=i_bar, v_bar=v_bar,
    )


def stabilized_log_partition(beta: float, params: OscillatorParams, summary: SpectralSummary | None = None) -> float:
    """ln(Z + dZ) with dZ = exp(-beta(E0 + w)) [exp(-beta Delta) - (1 - beta Delta)].

    The correction turns the linear-in-beta subleading term of Z into a pure
    exponential so that the first excited level is well defined.
    """
    s = summary or gap_quantities(params)
    log_z = partition_function(beta, params).log_z
    bd = beta * s.delta
    correction = math.expm1(-bd) + bd
    log_dz_rel = -beta * (s.e0 + s.omega_bar) - log_z
    return log_z + math.log1p(correction * math.exp(log_dz_rel))


def temperature_gap(beta: float, log_z: float, e0_inf: float, gap_inf: float) -> FiniteTemperatureEnergies:
    """E0(beta), E1(beta) and their difference from a partition function.

    E0(beta) = -ln Z / beta and E1(beta) = -ln(Z - exp(-beta E0_inf)) / beta.
    Once beta * gap_inf exceeds ``ASYMPTOTIC_GAP_EXPONENT`` the subtraction is
    replaced by its two-level limit Z ~ exp(-beta E0)(1 + exp(-beta gap)).
    """
    if beta * gap_inf > ASYMPTOTIC_GAP_EXPONENT:
        e0_b = e0_inf - math.log1p(math.exp(-beta * gap_inf)) / beta
        e1_b = e0_inf + gap_inf
        return FiniteTemperatureEnergies(e0_b, e1_b, e1_b - e0_b)
    shifted = log_z + beta * e0_inf
    if not shifted > 0:
        raise DegeneracyError(f"Z <= exp(-beta E0) at beta={beta!r}; excited level undefined")
    e0_b = -log_z / beta
    e1_b = e0_inf - math.log(math.expm1(shifted)) / beta
    return FiniteTemperatureEnergies(e0_b, e1_b, e1_b - e0_b)


def finite_temperature_energies(beta: float, params: OscillatorParams,
                                summary: SpectralSummary | None = None) -> FiniteTemperatureEnergies:
    """Temperature-dependent E0, E1 and gap from the stabilized model Z."""
    s = summary or gap_quantities(params)
    return temperature_gap(beta, stabilized_log_partition(beta, params, s), s.e0, s.gap)
