"""Minimal-sensitivity partition function of the quartic anharmonic oscillator."""

__version__ = "0.1.0"

from .baselines import (bf_free_energy, bf_partition, fk_first_excited, fk_ground_energy, fk_partition,
                        relative_error)
from .effective_frequency import OscillatorParams, b_bessel, b_function, omega_g
from .errors import (AccuracyError, DegeneracyError, DomainError, NumericError, QuarticError, SolverError,
                     ValidityError)
from .oracle import BasisSpec, ExactSpectrum, exact_partition, exact_spectrum
from .pms import PmsSolution, ThermoPoint, partition_function, solve_pms
from .series import strong_coupling_coeffs, weak_coupling_energy
from .spectrum import finite_temperature_energies, gap_quantities, ground_energy, omega_bar

__all__ = [
    "__version__",
    "OscillatorParams", "b_function", "b_bessel", "omega_g",
    "PmsSolution", "ThermoPoint", "solve_pms", "partition_function",
    "omega_bar", "ground_energy", "gap_quantities", "finite_temperature_energies",
    "weak_coupling_energy", "strong_coupling_coeffs",
    "BasisSpec", "ExactSpectrum", "exact_spectrum", "exact_partition",
    "fk_partition", "fk_ground_energy", "fk_first_excited", "bf_free_energy", "bf_partition", "relative_error",
    "QuarticError", "DomainError", "NumericError", "AccuracyError", "SolverError", "DegeneracyError",
    "ValidityError",
]
