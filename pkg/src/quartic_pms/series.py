"""Weak- and strong-coupling expansions of the model ground-state energy.

The weak-coupling coefficients are exact rationals: every Gaussian moment
involved shares the same sqrt(pi), so ratios of moments are rational and the
whole construction can run in :class:`fractions.Fraction` arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError
from .specialfn import double_factorial, gamma, gaussian_moment_4n

__all__ = [
    "RationalSeries",
    "series_mul",
    "series_log",
    "series_sqrt",
    "series_compose",
    "b_taylor",
    "weak_coupling_frequency",
    "weak_coupling_energy",
    "EXACT_RSPT_COEFFS",
    "bender_wu_asymptote",
    "bender_wu_ratio",
    "StrongCouplingCoeffs",
    "strong_coupling_coeffs",
    "EXACT_STRONG_COUPLING",
    "DEFAULT_MAX_ORDER",
]

DEFAULT_MAX_ORDER = 8

# Rayleigh-Schroedinger coefficients of the exact E0(g) at omega = 1.
EXACT_RSPT_COEFFS = (
    Fraction(1, 2),
    Fraction(3, 4),
    Fraction(-21, 8),
    Fraction(333, 16),
    Fraction(-30885, 128),
    Fraction(916731, 256),
)

# Literature strong-coupling coefficients of the exact E0 (omega = 1), 4 digits.
EXACT_STRONG_COUPLING = (0.6679, 0.1436, -0.0086)


class RationalSeries:
    """Truncated formal power series with exact rational coefficients.

    ``coefficients[k]`` multiplies x**k; terms beyond ``order`` are unknown,
    not zero, and are never produced by arithmetic.
    """

    __slots__ = ("coefficients", "order")

    def __init__(self, coefficients: Iterable, order: int | None = None):
        coeffs = [Fraction(c) for c in coefficients]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise DomainError("series order must be non-negative")
        coeffs = coeffs[: order + 1]
        coeffs += [Fraction(0)] * (order + 1 - len(coeffs))
        self.coefficients = tuple(coeffs)
        self.order = order

    @classmethod
    def constant(cls, value, order: int) -> "RationalSeries":
        return cls([value], order)

    @classmethod
    def variable(cls, order: int) -> "RationalSeries":
        return cls([0, 1], order)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coefficients)

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalSeries):
            return self.order == other.order and self.coefficients == other.coefficients
        return NotImplemented

    def __hash__(self):
        return hash((self.order, self.coefficients))

    def __repr__(self) -> str:
        terms = ", ".join(str(c) for c in self.coefficients)
        return f"RationalSeries([{terms}], order={self.order})"

    def _coerce(self, other) -> "RationalSeries":
        if isinstance(other, RationalSeries):
            return other
        return RationalSeries.constant(other, self.order)

    def __add__(self, other) -> "RationalSeries":
        other = self._coerce(other)
        order = min(self.order, other.order)
        return RationalSeries([a + b for a, b in zip(self.coefficients, other.coefficients)], order)

    __radd__ = __add__

    def __neg__(self) -> "RationalSeries":
        return RationalSeries([-c for c in self.coefficients], self.order)

    def __sub__(self, other) -> "RationalSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalSeries":
        return series_mul(self, other)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "RationalSeries":
        return RationalSeries(self.coefficients, min(order, self.order))

    def evaluate(self, x: float) -> float:
        total = 0.0
        for c in reversed(self.coefficients):
            total = total * x + float(c)
        return total


def series_mul(a: RationalSeries, b) -> RationalSeries:
    if not isinstance(b, RationalSeries):
        b = Fraction(b)
        return RationalSeries([c * b for c in a.coefficients], a.order)
    order = min(a.order, b.order)
    out = [Fraction(0)] * (order + 1)
    for i in range(order + 1):
        ai = a.coefficients[i]
        if ai:
            for j in range(order + 1 - i):
                out[i + j] += ai * b.coefficients[j]
    return RationalSeries(out, order)


def _reciprocal(a: RationalSeries) -> RationalSeries:
    if a[0] == 0:
        raise DomainError("series with zero constant term has no reciprocal")
    out = [1 / a[0]]
    for n in range(1, a.order + 1):
        out.append(-sum(a[k] * out[n - k] for k in range(1, n + 1)) / a[0])
    return RationalSeries(out, a.order)


def series_div(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    return series_mul(a, _reciprocal(b))


def series_log(a: RationalSeries) -> RationalSeries:
    """log(a) for a series with constant term exactly 1."""
    if a[0] != 1:
        raise DomainError(f"series_log needs constant term 1, got {a[0]}")
    # log(a)' = a' / a, integrated term by term.
    deriv = RationalSeries([(k + 1) * a[k + 1] for k in range(a.order)] or [0], max(a.order - 1, 0))
    quotient = series_mul(deriv, _reciprocal(a.truncate(deriv.order)))
    out = [Fraction(0)] + [quotient[k - 1] / k for k in range(1, a.order + 1)]
    return RationalSeries(out, a.order)


def _rational_sqrt(q: Fraction) -> Fraction:
    if q < 0:
        raise DomainError(f"negative constant term {q}")
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num != q.numerator or den * den != q.denominator:
        raise DomainError(f"constant term {q} is not the square of a rational")
    return Fraction(num, den)


def series_sqrt(a: RationalSeries) -> RationalSeries:
    """Square root with the positive root chosen for the constant term."""
    r0 = _rational_sqrt(a[0])
    if r0 == 0:
        raise DomainError("series_sqrt needs a non-zero constant term")
    out = [r0]
    for n in range(1, a.order + 1):
        acc = a[n] - sum(out[k] * out[n - k] for k in range(1, n))
        out.append(acc / (2 * r0))
    return RationalSeries(out, a.order)


def series_compose(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    """a(b(x)); requires b to have zero constant term."""
    if b[0] != 0:
        raise DomainError("inner series of a composition must vanish at 0")
    order = min(a.order, b.order)
    result = RationalSeries.constant(0, order)
    power = RationalSeries.constant(1, order)
    for k in range(order + 1):
        if a[k]:
            result = result + series_mul(power, a[k])
        power = series_mul(power, b)
    return result


def _moment_series(shift: int, order: int) -> RationalSeries:
    """Taylor series in x of  int y^(2 shift) exp(-y^2 - x y^4) dy / sqrt(pi)."""
    coeffs = []
    for n in range(order + 1):
        power = 4 * n + 2 * shift
        coeffs.append(Fraction((-1) ** n * double_factorial(power - 1), math.factorial(n) * 2 ** (power // 2)))
    return RationalSeries(coeffs, order)


def b_taylor(order: int) -> RationalSeries:
    """Exact Taylor series of B(x) around x = 0."""
    if order < 0:
        raise DomainError("order must be non-negative")
    return series_div(_moment_series(0, order), series_mul(_moment_series(1, order), 2))


def _check_order(order, max_order):
    if order < 0:
        raise DomainError("order must be non-negative")
    if order > max_order:
        raise DomainError(f"order {order} exceeds the configured maximum {max_order}")


def weak_coupling_frequency(order: int, max_order: int = DEFAULT_MAX_ORDER) -> RationalSeries:
    """Coefficients u_n of omega_bar(g) = sum u_n g^n at omega = 1.

    Iterated substitution w <- sqrt(B(2 g w)); each pass fixes one more order.
    """
    _check_order(order, max_order)
    b_series = b_taylor(order)
    w = RationalSeries.constant(1, order)
    for _ in range(order + 1):
        argument = RationalSeries([0] + [2 * c for c in w.coefficients[:order]], order)
        w = series_sqrt(series_compose(b_series, argument))
    return w


def weak_coupling_energy(order: int = 5, omega: float = 1, max_order: int = DEFAULT_MAX_ORDER) -> RationalSeries:
    """Exact weak-coupling series E0(g) = sum E^(n) g^n of the model at omega = 1."""
    if omega != 1:
        raise DomainError("exact rational expansion is only available at omega = 1; use the numeric ground_energy path")
    w = weak_coupling_frequency(order, max_order)
    argument = RationalSeries([0] + [2 * c for c in w.coefficients[:order]], order)
    quartic = RationalSeries([gaussian_moment_4n(n) * (-1) ** n / math.factorial(n) for n in range(order + 1)], order)
    j_series = series_mul(w, series_compose(quartic, argument))
    return series_mul(series_mul(w, 1 - series_log(j_series)), Fraction(1, 2))


def bender_wu_asymptote(n: int) -> float:
    """Large-order form -(sqrt 6 / pi) (-3/4)^n (2n)! / n! of the exact coefficients."""
    return -math.sqrt(6.0) / math.pi * (-0.75) ** n * math.factorial(2 * n) / math.factorial(n)


def bender_wu_ratio(coeffs: Sequence, n: int) -> float:
    """E^(n) divided by the Bender-Wu large-order form."""
    if n < 2:
        raise DomainError("ratio is meaningful only for n >= 2")
    if n >= len(coeffs):
        raise DomainError(f"coefficient {n} not available (series order {len(coeffs) - 1})")
    return float(coeffs[n]) / bender_wu_asymptote(n)


@dataclass(frozen=True)
class StrongCouplingCoeffs:
    """Large-g expansion data.

    ``b``: B(x) = sqrt(x) sum_n b[n] x^(-n/2).
    ``omega_n``, ``j_n``: coefficients of omega_bar / (2g)^(1/3) and of
    J = sqrt(omega_bar / pi) I_bar in powers of y = g^(-2/3).
    ``alpha_n``: E0(g) = g^(1/3) sum_n alpha_n y^n.
    """

    b: tuple[float, float, float]
    omega_n: tuple[float, float, float]
    j_n: tuple[float, float, float]
    alpha_n: tuple[float, float, float]
    convention: str


def _b_closed_forms():
    g34, g54, g74 = gamma(0.75), gamma(1.25), gamma(1.75)
    b0 = 2.0 * g54 / g34
    b1 = (4.0 * g54**2 - g34**2) / (2.0 * g34**2)
    b2 = -g54 * (g34**2 - 8.0 * g54**2 + 4.0 * g34 * g74) / (4.0 * g34**3)
    return b0, b1, b2


def _alphas(w, j):
    log_j0 = math.log(j[0])
    a0 = w[0] * (1.0 - log_j0)
    a1 = -j[1] * w[0] / j[0] + w[1] * (1.0 - log_j0)
    a2 = (j[1] ** 2 - 2.0 * j[0] * j[2]) * w[0] / (2.0 * j[0] ** 2) - j[1] * w[1] / j[0] + w[2] * (1.0 - log_j0)
    return a0, a1, a2


def strong_coupling_coeffs(omega: float = 1.0, convention: str = "derived") -> StrongCouplingCoeffs:
    """Strong-coupling coefficients from Gamma-function closed forms.

    ``convention="derived"`` expands the implicit frequency equation and E0
    consistently in y = g^(-2/3); these coefficients reproduce the large-g
    behaviour of :func:`quartic_pms.spectrum.ground_energy`.

    ``convention="printed"`` evaluates the published closed forms for
    omega_n and J_n term by term; its alpha_1, alpha_2 differ from the
    derived ones.  In both conventions alpha_n carries the 2^(1/3)/2 factor
    that converts (2g)^(1/3)/2 into the g^(1/3) prefactor.
    """
    if not omega > 0:
        raise DomainError("omega must be positive")
    b0, b1, b2 = _b_closed_forms()
    w0 = b0 ** (2.0 / 3.0)
    g14, g34, g54, gm14 = gamma(0.25), gamma(0.75), gamma(1.25), gamma(-0.25)
    sqrt_pi = math.sqrt(math.pi)
    two13, two23 = 2.0 ** (1.0 / 3.0), 2.0 ** (2.0 / 3.0)
    if convention == "derived":
        # Expansion variable eps = omega^2 (2g)^(-2/3) = (omega^2 / 2^(2/3)) y.
        e1 = 2.0 * b1 / (3.0 * w0)
        e2 = (2.0 * b0 * b2 - b1**2) / (3.0 * b0**2)
        r1, r2 = e1 / w0, e2 / w0
        # J = W^(3/4) / (2 sqrt(pi)) [G(1/4) - kappa G(3/4) + kappa^2 G(5/4) / 2],
        # kappa = eps W^(-1/2).
        p0 = w0**0.75
        p1 = p0 * 0.75 * r1
        p2 = p0 * (0.75 * r2 - 3.0 / 32.0 * r1**2)
        q0 = g14
        q1 = -g34 / math.sqrt(w0)
        q2 = g34 / math.sqrt(w0) * 0.5 * r1 + 0.5 * g54 / w0
        je = [(p0 * q0) / (2 * sqrt_pi), (p0 * q1 + p1 * q0) / (2 * sqrt_pi),
              (p0 * q2 + p1 * q1 + p2 * q0) / (2 * sqrt_pi)]
        unit = omega**2 / two23
        w = (w0, e1 * unit, e2 * unit**2)
        j = (je[0], je[1] * unit, je[2] * unit**2)
    elif convention == "printed":
        w = (w0, two23 * omega * b1 / (3.0 * w0),
             omega**2 / two23 * (2.0 * b0 * b2 - b1**2) / (3.0 * b0**2))
        j0 = w0**0.75 * g14 / (2.0 * sqrt_pi)
        j1 = (two13 * omega**2 * math.sqrt(w0) * gm14 + 6.0 * w[1] * g14) / (16.0 * sqrt_pi * w0**0.25)
        j2 = (two13 * math.sqrt(w0) * w[1] * omega**2 * gm14
              + (two23 * omega**4 * w0 - 3.0 * w[1] ** 2 + 24.0 * w0 * w[2]) * g14) / (64.0 * sqrt_pi * w0**1.25)
        j = (j0, j1, j2)
    else:
        raise DomainError(f"unknown convention {convention!r}")
    prefactor = two13 / 2.0
    alpha = tuple(prefactor * a for a in _alphas(w, j))
    return StrongCouplingCoeffs((b0, b1, b2), tuple(w), tuple(j), alpha, convention)
