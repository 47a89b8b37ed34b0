"""Exact reference spectrum by diagonalization in a harmonic-oscillator basis.

The Hamiltonian is written in the eigenbasis of a harmonic oscillator with
frequency Omega_b:

    H = Omega_b (k + 1/2) + (omega^2 - Omega_b^2) x^2 / 2 + g x^4,
    x = (a + a^dagger) / sqrt(2 Omega_b).

Boltzmann sums over the converged eigenvalues give the exact partition
function, energies and finite-temperature gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from scipy.special import logsumexp

from .effective_frequency import OscillatorParams
from .errors import DomainError, NumericError, ValidityError
from .pms import ThermoPoint
from .spectrum import FiniteTemperatureEnergies, omega_bar

__all__ = [
    "BasisSpec",
    "ExactSpectrum",
    "MIN_BETA",
    "TAIL_TOLERANCE",
    "build_hamiltonian",
    "parity_blocks",
    "exact_spectrum",
    "tail_bound",
    "minimal_beta",
    "exact_partition",
    "converged_partition",
    "exact_temperature_energies",
    "save_spectrum",
    "load_spectrum",
]

# Refuse Boltzmann sums below this inverse temperature.
MIN_BETA = 0.05
TAIL_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BasisSpec:
    size: int = 200
    basis_frequency: float | None = None
    convergence_digits: int = 10

    def __post_init__(self):
        if self.size < 10:
            raise DomainError(f"basis size must be at least 10, got {self.size}")
        if self.basis_frequency is not None and not self.basis_frequency > 0:
            raise DomainError("basis frequency must be positive")
        if not 1 <= self.convergence_digits <= 15:
            raise DomainError("convergence_digits must lie in [1, 15]")

    def frequency_for(self, params: OscillatorParams) -> float:
        if self.basis_frequency is not None:
            return self.basis_frequency
        return omega_bar(params)


@dataclass(frozen=True)
class ExactSpectrum:
    """Ascending eigenvalues; only the first ``converged_count`` are trusted."""

    energies: np.ndarray
    converged_count: int
    params: OscillatorParams
    basis_size: int
    basis_frequency: float

    @property
    def converged(self) -> np.ndarray:
        return self.energies[: self.converged_count]

    @property
    def e0(self) -> float:
        return float(self.energies[0])

    @property
    def e1(self) -> float:
        return float(self.energies[1])

    @property
    def gap(self) -> float:
        return float(self.energies[1] - self.energies[0])


def build_hamiltonian(params: OscillatorParams, size: int, basis_frequency: float) -> np.ndarray:
    """Dense symmetric Hamiltonian matrix of size ``size``.

    Powers of x are formed on a slightly larger space so that the truncated
    x^2 and x^4 blocks are exact.
    """
    if size < 1 or not basis_frequency > 0:
        raise DomainError("size and basis frequency must be positive")
    big = size + 4
    ladder = np.diag(np.sqrt(np.arange(1, big, dtype=float)), 1)
    x = (ladder + ladder.T) / math.sqrt(2.0 * basis_frequency)
    x2 = x @ x
    x4 = x2 @ x2
    h = np.diag(basis_frequency * (np.arange(big) + 0.5))
    h = h + 0.5 * (params.omega**2 - basis_frequency**2) * x2 + params.g * x4
    h = h[:size, :size]
    return 0.5 * (h + h.T)


def parity_blocks(hamiltonian: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Even and odd sub-blocks; the potential is even so they decouple."""
    return hamiltonian[0::2, 0::2], hamiltonian[1::2, 1::2]


def _eigvalsh(matrix):
    try:
        return np.linalg.eigvalsh(matrix)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"symmetric eigensolver failed: {exc}") from exc


def exact_spectrum(params: OscillatorParams, basis: BasisSpec = BasisSpec()) -> ExactSpectrum:
    """Eigenvalues of the truncated Hamiltonian plus a convergence count.

    The count is the number of leading eigenvalues on which the size-N and
    size-N/2 diagonalizations agree to ``convergence_digits`` relative digits.
    """
    omega_b = basis.frequency_for(params)
    energies = _eigvalsh(build_hamiltonian(params, basis.size, omega_b))
    half = _eigvalsh(build_hamiltonian(params, basis.size // 2, omega_b))
    tol = 10.0 ** (-basis.convergence_digits)
    diff = np.abs(energies[: half.size] - half) > tol * np.maximum(np.abs(half), 1.0)
    count = int(np.argmax(diff)) if diff.any() else half.size
    return ExactSpectrum(energies, count, params, basis.size, omega_b)


def tail_bound(beta: float, spectrum: ExactSpectrum) -> float:
    """Upper bound on the Boltzmann weight beyond the converged levels.

    Level spacings of x^2 + x^4 potentials never shrink, so the tail is
    dominated by a geometric series with the last converged spacing.
    """
    k = spectrum.converged_count
    if k < 2:
        return math.inf
    e = spectrum.energies
    spacing = float(e[k - 1] - e[k - 2])
    return math.exp(-beta * float(e[k - 1])) / -math.expm1(-beta * spacing)


def _log_sum(beta, levels):
    return float(logsumexp(-beta * np.asarray(levels)))


def _valid(beta, spectrum):
    log_z = _log_sum(beta, spectrum.converged)
    bound = tail_bound(beta, spectrum)
    return bound == 0 or math.log(bound) - log_z < math.log(TAIL_TOLERANCE), log_z, bound


def minimal_beta(spectrum: ExactSpectrum) -> float:
    """Smallest beta (to 3 digits) at which the tail criterion holds."""
    lo, hi = MIN_BETA, 1.0
    while not _valid(hi, spectrum)[0]:
        hi *= 2.0
        if hi > 1e6:
            return math.inf
    if _valid(lo, spectrum)[0]:
        return lo
    while hi - lo > 1e-3 * hi:
        mid = 0.5 * (lo + hi)
        lo, hi = (lo, mid) if _valid(mid, spectrum)[0] else (mid, hi)
    return hi


def exact_partition(beta: float, spectrum: ExactSpectrum) -> ThermoPoint:
    """Z = sum over converged levels of exp(-beta E_n)."""
    if not (math.isfinite(beta) and beta > 0):
        raise DomainError(f"beta must be positive, got {beta!r}")
    if beta < MIN_BETA:
        raise ValidityError(f"beta={beta!r} is below the oracle floor", MIN_BETA)
    ok, log_z, bound = _valid(beta, spectrum)
    if not ok:
        raise ValidityError(
            f"truncated Boltzmann tail {bound:.3g} exceeds {TAIL_TOLERANCE:g} Z at beta={beta!r}",
            minimal_beta(spectrum),
        )
    return ThermoPoint(beta, log_z, "exact")


def converged_partition(beta: float, params: OscillatorParams, basis: BasisSpec = BasisSpec(),
                        max_size: int = 3200) -> ThermoPoint:
    """exact_partition with the basis doubled until the tail criterion holds."""
    while True:
        spec = exact_spectrum(params, basis)
        try:
            return exact_partition(beta, spec)
        except ValidityError:
            if beta < MIN_BETA or 2 * basis.size > max_size:
                raise
            basis = replace(basis, size=2 * basis.size)


def exact_temperature_energies(beta: float, spectrum: ExactSpectrum) -> FiniteTemperatureEnergies:
    """E0(beta) = -ln Z / beta and E1(beta) = -ln(sum_{n>=1} exp(-beta E_n)) / beta.

    Dropping the ground term from the sum avoids the cancellation in
    Z - exp(-beta E0).
    """
    z = exact_partition(beta, spectrum)
    e0_b = -z.log_z / beta
    e1_b = -_log_sum(beta, spectrum.converged[1:]) / beta
    return FiniteTemperatureEnergies(e0_b, e1_b, e1_b - e0_b)


def save_spectrum(spectrum: ExactSpectrum, path) -> None:
    """Write the converged levels as ``index energy`` lines under a header."""
    p = spectrum.params
    lines = [
        f"# omega={p.omega!r} g={p.g!r} N={spectrum.basis_size} Omega_b={spectrum.basis_frequency!r}"
        f" converged={spectrum.converged_count}"
    ]
    lines += [f"{i} {float(e)!r}" for i, e in enumerate(spectrum.energies)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_spectrum(path) -> ExactSpectrum:
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith("#"):
        raise DomainError(f"{path}: missing spectrum header")
    fields = dict(item.split("=", 1) for item in text[0][1:].split())
    try:
        params = OscillatorParams(float(fields["omega"]), float(fields["g"]))
        energies = np.array([float(line.split()[1]) for line in text[1:] if line.strip()])
        return ExactSpectrum(energies, int(fields["converged"]), params, int(fields["N"]), float(fields["Omega_b"]))
    except (KeyError, IndexError, ValueError) as exc:
        raise DomainError(f"{path}: malformed spectrum file ({exc})") from exc
