"""Variational baselines: Feynman-Kleinert effective classical potential and
the Buttner-Flytzanis optimized harmonic trial free energy."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._solvers import bracketed_root, expand_bracket
from .effective_frequency import OscillatorParams
from .errors import DegeneracyError, DomainError, SolverError
from .pms import ThermoPoint, log_2sinh
from .specialfn import QuadratureSpec, integrate_decaying
from .spectrum import FiniteTemperatureEnergies, temperature_gap

__all__ = [
    "FkPointSolution",
    "BfSolution",
    "FK_QUADRATURE",
    "fk_effective_potential",
    "fk_partition",
    "fk_cubic_root",
    "fk_ground_energy",
    "fk_first_excited",
    "bf_free_energy",
    "bf_partition",
    "bf_temperature_energies",
    "relative_error",
]

FK_QUADRATURE = QuadratureSpec(rel_tol=1e-12, max_refinements=400)
_FK_TOL = 1e-12
_FK_DAMPING = 0.5
_FK_MAX_ITER = 2000


@dataclass(frozen=True)
class FkPointSolution:
    x0: float
    omega_loc: float
    a2: float
    w1: float


@dataclass(frozen=True)
class BfSolution:
    beta: float
    omega_tilde: float
    free_energy: float


def _check_beta(beta):
    if not (math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be positive, got {beta!r}")


def _smearing_width(omega_loc, beta):
    """a^2 = ((t coth t) - 1) / (Omega^2 beta) with t = Omega beta / 2."""
    t = 0.5 * omega_loc * beta
    small = t < 1e-3
    ts = np.where(small, 1.0, t)
    core = np.where(small, t * t / 3.0 - t**4 / 45.0, ts / np.tanh(ts) - 1.0)
    return core / (omega_loc**2 * beta)


def _log_sinh_over(t):
    """log(sinh(t) / t) for t > 0."""
    big = t > 20
    tb = np.where(big, t, 1.0)
    ts = np.where(big, 1.0, np.maximum(t, 1e-300))
    return np.where(big, tb + np.log1p(-np.exp(-2.0 * tb)) - np.log(2.0 * tb),
                    np.where(t < 1e-8, t * t / 6.0, np.log(np.sinh(ts) / ts)))


def _fk_solve(x0, beta, params):
    """Vectorized self-consistent (Omega, a^2, W1) at centroid positions x0."""
    x0 = np.asarray(x0, dtype=float)
    w2, g = params.omega**2, params.g
    big = w2 + 12.0 * g * x0 * x0
    om = np.sqrt(big)
    for _ in range(_FK_MAX_ITER):
        new = np.sqrt(big + 12.0 * g * _smearing_width(om, beta))
        done = np.abs(new - om) <= _FK_TOL * om
        om = np.where(done, new, (1.0 - _FK_DAMPING) * om + _FK_DAMPING * new)
        if done.all():
            break
    else:
        raise SolverError(f"Feynman-Kleinert self-consistency did not converge at beta={beta!r}")
    a2 = _smearing_width(om, beta)
    smeared = 0.5 * a2 * w2 + 3.0 * a2 * a2 * g + 0.5 * (12.0 * a2 * g + w2) * x0 * x0 + g * x0**4
    w1 = _log_sinh_over(0.5 * om * beta) / beta - 0.5 * om * om * a2 + smeared
    return om, a2, w1


def fk_effective_potential(x0: float, beta: float, params: OscillatorParams) -> FkPointSolution:
    """Effective classical potential W1(x0) with its optimal Omega(x0), a^2(x0)."""
    _check_beta(beta)
    om, a2, w1 = _fk_solve(x0, beta, params)
    return FkPointSolution(float(x0), float(om), float(a2), float(w1))


def fk_partition(beta: float, params: OscillatorParams, spec: QuadratureSpec = FK_QUADRATURE) -> ThermoPoint:
    """Z = (2 pi beta)^(-1/2) times the integral of exp(-beta W1(x0)) over x0."""
    _check_beta(beta)
    w_ref = float(_fk_solve(0.0, beta, params)[2])

    def integrand(x):
        return np.exp(-beta * (_fk_solve(x, beta, params)[2] - w_ref))

    integral = integrate_decaying(integrand, spec, even=True, scale=params.width(beta))
    log_z = -beta * w_ref + math.log(integral) - 0.5 * math.log(2.0 * math.pi * beta)
    return ThermoPoint(beta, log_z, "fk")


def fk_cubic_root(params: OscillatorParams) -> float:
    """Real root Omega_0 of Omega^3 - omega^2 Omega - 6 g = 0 (Omega_0 >= omega)."""
    w = params.omega
    c = 9.0 * math.sqrt(3.0) * params.g / w**3
    if c <= 1.0:
        return 2.0 * w / math.sqrt(3.0) * math.cos(math.acos(c) / 3.0)
    return 2.0 * w / math.sqrt(3.0) * math.cosh(math.acosh(c) / 3.0)


def fk_ground_energy(params: OscillatorParams) -> float:
    """Zero-temperature limit of both variational baselines."""
    big = fk_cubic_root(params)
    return 0.25 * big + 0.25 * params.omega**2 / big + 0.75 * params.g / big**2


def _fk_excited_at(beta, params, e0):
    shifted = fk_partition(beta, params).log_z + beta * e0
    if not shifted > 0:
        raise DegeneracyError(f"Z_FK <= exp(-beta E0) at beta={beta!r}")
    return e0 - math.log(math.expm1(shifted)) / beta


def fk_first_excited(params: OscillatorParams, beta_max: float = 40.0, points: int = 9) -> float:
    """Large-beta extrapolation of -ln(Z_FK - exp(-beta E0)) / beta.

    E1(beta) approaches its limit like ln(beta) / beta, so the model
    E1 + a ln(beta) / beta + b / beta is fitted on [beta_max / 2, beta_max].
    """
    if params.g == 0:
        return 1.5 * params.omega
    if not beta_max > 2:
        raise DomainError("beta_max must exceed 2")
    e0 = fk_ground_energy(params)
    betas = np.linspace(0.5 * beta_max, beta_max, points)
    values = np.array([_fk_excited_at(b, params, e0) for b in betas])
    design = np.column_stack([np.ones_like(betas), np.log(betas) / betas, 1.0 / betas])
    coeffs, *_ = np.linalg.lstsq(design, values, rcond=None)
    return float(coeffs[0])


def bf_free_energy(beta: float, params: OscillatorParams) -> BfSolution:
    """Optimized harmonic trial free energy.

    The trial frequency solves w^3 - omega^2 w - 6 g coth(w beta / 2) = 0 with w > omega.
    """
    _check_beta(beta)
    w, g = params.omega, params.g
    if g == 0:
        wt = w
    else:
        def residual(x):
            return x**3 - w * w * x - 6.0 * g / math.tanh(0.5 * x * beta)

        lo, hi = expand_bracket(residual, w, w + (6.0 * g / math.tanh(0.5 * w * beta)) ** (1.0 / 3.0))
        wt = bracketed_root(residual, lo, hi)
    c = 1.0 / (math.tanh(0.5 * wt * beta) * wt)
    f0 = log_2sinh(0.5 * wt * beta) / beta
    free = f0 + 0.25 * (w * w - wt * wt) * c + 0.75 * g * c * c
    return BfSolution(beta, wt, free)


def bf_partition(beta: float, params: OscillatorParams) -> ThermoPoint:
    return ThermoPoint(beta, -beta * bf_free_energy(beta, params).free_energy, "bf")


def bf_temperature_energies(beta: float, params: OscillatorParams) -> FiniteTemperatureEnergies:
    """Finite-temperature E0, E1 and gap of the optimized harmonic trial.

    At large beta the trial frequency tends to Omega_0, so E0 -> fk_ground_energy
    and the gap -> Omega_0.
    """
    return temperature_gap(beta, bf_partition(beta, params).log_z, fk_ground_energy(params), fk_cubic_root(params))


def relative_error(model_free_energy: float, exact_free_energy: float) -> float:
    """100 (F_model - F_exact) / |F_exact|, in percent."""
    if exact_free_energy == 0:
        raise DomainError("relative error undefined for F_exact = 0")
    return 100.0 * (model_free_energy - exact_free_energy) / abs(exact_free_energy)
