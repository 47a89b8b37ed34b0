"""Principle-of-minimal-sensitivity partition function.

The gaussian-approximated discretized partition function

    Z_n = C(tau)^n / (2 sinh(beta omega_g / 2)),   tau = beta / n,
    C(tau) = omega_g sqrt(tau) I_v(tau) / sqrt(2 pi),

is made stationary with respect to omega_g, which selects a unique, generally
non-integer, number of slices n_c(beta).  All products are accumulated in log
space so large beta cannot overflow.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._solvers import damped_fixed_point, expand_bracket
from .effective_frequency import OscillatorParams, omega_g
from .errors import DomainError
from .specialfn import QuadratureSpec, integrate_decaying

__all__ = [
    "PmsSolution",
    "ThermoPoint",
    "MODELS",
    "log_2sinh",
    "potential_integral",
    "c_of_tau",
    "log_zn",
    "zn_gaussian",
    "pms_map",
    "solve_pms",
    "partition_function",
    "harmonic_partition",
    "classical_partition",
    "zn_fan",
    "C_SMALL_TAU",
]

MODELS = ("pms", "fk", "bf", "exact", "classical", "harmonic")

IV_QUADRATURE = QuadratureSpec(rel_tol=1e-13, max_refinements=400)

# Small-tau limit of C(tau) for any g > 0.
C_SMALL_TAU = 2.0 * math.sqrt(2.0 / math.pi) * math.gamma(1.25) ** 1.5 / math.gamma(0.75) ** 0.5


@dataclass(frozen=True)
class PmsSolution:
    beta: float
    n_c: float
    tau_c: float
    omega_g_star: float
    iterations: int
    residual: float


@dataclass(frozen=True)
class ThermoPoint:
    """Partition function of one model at one inverse temperature.

    ``log_z`` is the primary quantity; ``z`` may underflow to 0.0 at very
    large beta while ``log_z`` and ``free_energy`` stay exact.
    """

    beta: float
    log_z: float
    model: str

    @property
    def z(self) -> float:
        return math.exp(self.log_z) if self.log_z < 709 else math.inf

    @property
    def free_energy(self) -> float:
        return -self.log_z / self.beta


def _check_beta(beta):
    if not (math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be positive, got {beta!r}")


def log_2sinh(y: float) -> float:
    """log(2 sinh(y)) for y > 0 without overflow."""
    if y > 20:
        return y + math.log1p(-math.exp(-2.0 * y))
    return math.log(2.0 * math.sinh(y))


def potential_integral(tau: float, params: OscillatorParams, spec: QuadratureSpec = IV_QUADRATURE) -> float:
    """I_v(tau): integral of exp(-tau V(x)) over the real line."""
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    if params.g == 0:
        return math.sqrt(2.0 * math.pi / tau) / params.omega
    return integrate_decaying(lambda x: np.exp(-tau * params.potential(x)), spec,
                              even=True, scale=params.width(tau))


def c_of_tau(tau: float, params: OscillatorParams) -> float:
    """C(tau) = omega_g(tau) sqrt(tau) I_v(tau) / sqrt(2 pi); identically 1 at g = 0."""
    if params.g == 0:
        if not tau > 0:
            raise DomainError(f"tau must be positive, got {tau!r}")
        return 1.0
    return omega_g(tau, params) * math.sqrt(tau) * potential_integral(tau, params) / math.sqrt(2.0 * math.pi)


def log_zn(n: float, beta: float, omega_gauss: float, params: OscillatorParams) -> float:
    """ln Z_n for an arbitrary trial frequency ``omega_gauss``.

    I_v is evaluated with the true potential at tau = beta / n.
    """
    _check_beta(beta)
    if not (n > 0 and omega_gauss > 0):
        raise DomainError("n and omega_g must be positive")
    tau = beta / n
    log_c = math.log(omega_gauss * math.sqrt(tau) * potential_integral(tau, params) / math.sqrt(2.0 * math.pi))
    return n * log_c - log_2sinh(0.5 * beta * omega_gauss)


def zn_gaussian(n: float, beta: float, omega_gauss: float, params: OscillatorParams) -> float:
    """Z_n before the minimal-sensitivity condition is imposed (inf on overflow)."""
    value = log_zn(n, beta, omega_gauss, params)
    return math.exp(value) if value < 709 else math.inf


def pms_map(n: float, beta: float, params: OscillatorParams) -> float:
    """Right-hand side of n = (beta w / 2) coth(beta w / 2) with w = omega_g(beta / n)."""
    y = 0.5 * beta * omega_g(beta / n, params)
    if y < 1e-8:
        return 1.0 + y * y / 3.0
    return y / math.tanh(y)


def solve_pms(beta: float, params: OscillatorParams, tol: float = 1e-12) -> PmsSolution:
    """Solve the stationarity condition for n_c(beta).

    Plain fixed-point iteration is contractive here (the map grows like n^(1/4));
    a bracketed root search takes over if it ever stalls.
    """
    _check_beta(beta)
    if not tol > 0:
        raise DomainError("tol must be positive")
    if params.g == 0:
        y = 0.5 * beta * params.omega
        n = 1.0 + y * y / 3.0 if y < 1e-8 else y / math.tanh(y)
        return PmsSolution(beta, n, beta / n, params.omega, 0, 0.0)

    def update(n):
        return pms_map(n, beta, params)

    # The map is >= 1 everywhere, so n_c >= 1.
    lo, hi = expand_bracket(lambda n: n - update(n), 1.0, max(2.0, beta * params.omega))
    start = min(max(1.0, 0.5 * beta * params.omega), hi)
    n, iterations, residual = damped_fixed_point(update, start, 1.0, hi, tol)
    tau = beta / n
    return PmsSolution(beta, n, tau, omega_g(tau, params), iterations, residual)


def partition_function(beta: float, params: OscillatorParams, tol: float = 1e-12) -> ThermoPoint:
    """Model partition function Z = C(tau_c)^n_c / (2 sinh(beta omega_g* / 2))."""
    sol = solve_pms(beta, params, tol)
    return ThermoPoint(beta, log_zn(sol.n_c, beta, sol.omega_g_star, params), "pms")


def harmonic_partition(beta: float, omega: float) -> ThermoPoint:
    _check_beta(beta)
    return ThermoPoint(beta, -log_2sinh(0.5 * beta * omega), "harmonic")


def classical_partition(beta: float, params: OscillatorParams) -> ThermoPoint:
    """Classical limit: integral of exp(-beta V) divided by sqrt(2 pi beta)."""
    _check_beta(beta)
    value = potential_integral(beta, params) / math.sqrt(2.0 * math.pi * beta)
    return ThermoPoint(beta, math.log(value), "classical")


def zn_fan(
    beta: float,
    params: OscillatorParams,
    n_values,
    fan_count: int = 13,
    fan_width: float = 0.3,
) -> list[tuple[float, float, float, float]]:
    """Z_n on a fan of trial frequencies around omega_g(beta / n).

    For each n, ``fan_count`` frequencies are spread uniformly over
    omega_g * [1 - fan_width, 1 + fan_width]; the middle one is omega_g itself.
    Returns rows (n, relative offset, omega_g, Z_n).
    """
    if fan_count < 1 or fan_count % 2 == 0:
        raise DomainError("fan_count must be a positive odd integer")
    if not 0 <= fan_width < 1:
        raise DomainError("fan_width must lie in [0, 1)")
    offsets = np.linspace(-fan_width, fan_width, fan_count) if fan_count > 1 else np.zeros(1)
    rows = []
    for n in n_values:
        center = omega_g(beta / n, params)
        for off in offsets:
            w = center * (1.0 + float(off))
            rows.append((float(n), float(off), w, zn_gaussian(n, beta, w, params)))
    return rows
