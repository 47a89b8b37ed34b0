"""Exact discretized path integral of the harmonic oscillator.

With n time slices the cyclic chain has eigenvalues lambda_k = 1 - cos(2 pi (k-1) / n)
and the n-slice partition function is Z_n = P_n(beta omega) / (beta omega).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, NumericError

__all__ = [
    "ChainEigenvalues",
    "chain_eigenvalues",
    "bracket_product",
    "sine_product",
    "p_n",
    "p_limit",
    "harmonic_zn",
]


@dataclass(frozen=True)
class ChainEigenvalues:
    n: int
    lambdas: np.ndarray


def _check_n(n, minimum):
    if int(n) != n or n < minimum:
        raise DomainError(f"n must be an integer >= {minimum}, got {n!r}")


def chain_eigenvalues(n: int) -> ChainEigenvalues:
    _check_n(n, 3)
    k = np.arange(1, n + 1)
    return ChainEigenvalues(n, 1.0 - np.cos(2.0 * np.pi * (k - 1) / n))


def bracket_product(n: int) -> float:
    """Product over k = 2..n of 1 / sqrt(2 lambda_k); equals 1 / n."""
    lam = chain_eigenvalues(n).lambdas[1:]
    return float(np.exp(-0.5 * np.log(2.0 * lam).sum()))


def sine_product(n: int, rtol: float = 1e-12) -> Fraction:
    """Exact value n / 2^(n-1) of prod_{k=1}^{n-1} sin(pi k / n).

    The floating product is evaluated alongside and must agree to ``rtol``.
    """
    _check_n(n, 2)
    exact = Fraction(n, 2 ** (n - 1))
    log_float = float(np.log(np.sin(np.pi * np.arange(1, n) / n)).sum())
    log_exact = math.log(n) - (n - 1) * math.log(2.0)
    if abs(math.expm1(log_float - log_exact)) > rtol:
        raise NumericError(f"sine product for n={n} disagrees with n/2^(n-1)")
    return exact


def p_n(x: float, n: int) -> float:
    """P_n(x) = prod_{i=2}^n (1 + x^2 / (2 lambda_i n^2))^(-1/2), summed in log space."""
    _check_n(n, 3)
    if not x >= 0:
        raise DomainError(f"x must be non-negative, got {x!r}")
    lam = chain_eigenvalues(n).lambdas[1:]
    return float(np.exp(-0.5 * np.log1p(x * x / (2.0 * lam * n * n)).sum()))


def p_limit(x: float) -> float:
    """n -> infinity limit x / (exp(x/2) - exp(-x/2))."""
    if x == 0:
        return 1.0
    return x / (2.0 * math.sinh(0.5 * x))


def harmonic_zn(n: int, beta: float, omega: float) -> float:
    """n-slice harmonic partition function P_n(beta omega) / (beta omega)."""
    if not (beta > 0 and omega > 0):
        raise DomainError("beta and omega must be positive")
    y = beta * omega
    return p_n(y, n) / y
