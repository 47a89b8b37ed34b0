"""Variance-matching function B(x) and the effective frequency omega_g(tau).

B(x) is half the ratio of the zeroth and second moments of exp(-y^2 - x y^4).
The default evaluation integrates those moments directly; a closed form in
modified Bessel functions is kept as an independent verification route.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DomainError
from .specialfn import QuadratureSpec, bessel_k_scaled, gamma, integrate_decaying

__all__ = [
    "OscillatorParams",
    "BEvaluation",
    "B_MOMENT_QUADRATURE",
    "ASYMPTOTIC_FROM",
    "quartic_moment",
    "b_function",
    "b_derivative",
    "b_bessel",
    "b_asymptotic_coeffs",
    "b_evaluate",
    "omega_g",
]


@dataclass(frozen=True)
class OscillatorParams:
    """Potential V(x) = omega^2 x^2 / 2 + g x^4 (units hbar = m = 1)."""

    omega: float = 1.0
    g: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.omega) and self.omega > 0):
            raise DomainError(f"omega must be positive, got {self.omega!r}")
        if not (math.isfinite(self.g) and self.g >= 0):
            raise DomainError(f"g must be non-negative, got {self.g!r}")

    def potential(self, x):
        return 0.5 * self.omega**2 * x * x + self.g * x**4

    def width(self, tau: float) -> float:
        """Rough width of exp(-tau V(x)), used to seed quadrature cut-offs."""
        harmonic = 1.0 / math.sqrt(tau * self.omega**2)
        if self.g == 0:
            return harmonic
        return min(harmonic, (tau * self.g) ** -0.25)


@dataclass(frozen=True)
class BEvaluation:
    x: float
    value: float
    derivative: float
    method: str


B_MOMENT_QUADRATURE = QuadratureSpec(rel_tol=1e-13, max_refinements=400)

# Beyond this argument the large-x series replaces quadrature.
ASYMPTOTIC_FROM = 1e6
_ASYMPTOTIC_TERMS = 8


def quartic_moment(k: int, x: float, spec: QuadratureSpec = B_MOMENT_QUADRATURE) -> float:
    """Integral over the real line of y**k exp(-y**2 - x y**4) for even k."""
    if k % 2:
        return 0.0
    scale = 1.0 if x <= 1 else x**-0.25

    def integrand(y):
        return y**k * np.exp(-y * y - x * y**4)

    return integrate_decaying(integrand, spec, even=True, scale=scale)


@lru_cache(maxsize=None)
def b_asymptotic_coeffs(terms: int = _ASYMPTOTIC_TERMS) -> tuple[float, ...]:
    """Coefficients B_n of B(x) = sqrt(x) * sum_n B_n x^(-n/2) at large x.

    Obtained by expanding exp(-eps z^2) inside the rescaled moments, with
    eps = x^(-1/2), and dividing the two resulting power series in eps.
    """
    num = [(-1) ** k / math.factorial(k) * gamma((2 * k + 1) / 4) for k in range(terms)]
    den = [(-1) ** k / math.factorial(k) * gamma((2 * k + 3) / 4) for k in range(terms)]
    quotient = []
    for n in range(terms):
        acc = num[n] - sum(quotient[j] * den[n - j] for j in range(n))
        quotient.append(acc / den[0])
    return tuple(0.5 * q for q in quotient)


def _b_asymptotic(x):
    coeffs = b_asymptotic_coeffs()
    r = 1.0 / math.sqrt(x)
    value = sum(c * r ** (n - 1) for n, c in enumerate(coeffs))
    slope = sum(c * 0.5 * (1 - n) * r ** (n + 1) for n, c in enumerate(coeffs))
    return value, slope


def _check_x(x):
    x = float(x)
    if not x >= 0:
        raise DomainError(f"B(x) is defined for x >= 0, got {x!r}")
    return x


def b_function(x: float) -> float:
    """B(x) by moment quadrature (large-x series beyond ``ASYMPTOTIC_FROM``)."""
    x = _check_x(x)
    if x == 0:
        return 1.0
    if x > ASYMPTOTIC_FROM:
        return _b_asymptotic(x)[0]
    return 0.5 * quartic_moment(0, x) / quartic_moment(2, x)


def b_derivative(x: float) -> float:
    """B'(x) = (M0 M6 - M2 M4) / (2 M2^2) with M_k the quartic moments."""
    x = _check_x(x)
    if x > ASYMPTOTIC_FROM:
        return _b_asymptotic(x)[1]
    m0, m2, m4, m6 = (quartic_moment(k, x) for k in (0, 2, 4, 6))
    return (m0 * m6 - m2 * m4) / (2.0 * m2 * m2)


def b_bessel(x: float) -> float:
    """B(x) from its closed form in K_{1/4}, K_{-3/4} and K_{5/4} at 1/(8x).

    The common exp(-1/(8x)) factor cancels, so scaled Bessel values are used.
    """
    x = _check_x(x)
    if x == 0:
        return 1.0
    z = 1.0 / (8.0 * x)
    k14 = bessel_k_scaled(0.25, z)
    k34 = bessel_k_scaled(-0.75, z)
    k54 = bessel_k_scaled(1.25, z)
    return 4.0 * x * k14 / (k34 + k54 - 2.0 * (1.0 + 2.0 * x) * k14)


def b_evaluate(x: float, method: str = "quadrature") -> BEvaluation:
    """Value and slope of B at ``x``.

    ``method`` selects how the value is computed; the slope always comes from
    the moment formula since the Bessel route has no cheap derivative.
    """
    if method == "quadrature":
        value = b_function(x)
    elif method == "bessel":
        value = b_bessel(x)
    else:
        raise DomainError(f"unknown B evaluation method {method!r}")
    return BEvaluation(float(x), value, b_derivative(x), method)


def omega_g(tau: float, params: OscillatorParams) -> float:
    """Effective frequency omega * sqrt(B(4 g / (tau omega^4)))."""
    if not tau > 0:
        raise DomainError(f"tau must be positive, got {tau!r}")
    if params.g == 0:
        return params.omega
    return params.omega * math.sqrt(b_function(4.0 * params.g / (tau * params.omega**4)))
