"""Closed-form average capacity for the fixed- and arbitrary-number ensembles.

Everything is evaluated in :class:`~fgcap.special_fn.ExactValue` arithmetic
first.  A floating-point path built on :func:`~fgcap.special_fn.digamma` and
:func:`~fgcap.special_fn.trigamma` is kept next to it as a consistency check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DomainError, UnsupportedCaseError
from .special_fn import (
    ExactValue,
    digamma,
    digamma_exact,
    pochhammer,
    trigamma,
    trigamma_exact,
)


def _check_int(name, value, low):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < low:
        raise DomainError(f"{name} must be >= {low}, got {value}")


@dataclass(frozen=True)
class Fixed:
    """Fixed particle number ``p`` on an ``m + n`` mode bipartition."""

    m: int
    n: int
    p: int

    def __post_init__(self):
        _check_int("m", self.m, 1)
        _check_int("n", self.n, 1)
        _check_int("p", self.p, 1)
        if self.m > self.n:
            raise DomainError(f"need m <= n, got m={self.m}, n={self.n}")
        if not self.m <= self.p <= self.n:
            raise DomainError(f"need m <= p <= n, got m={self.m}, p={self.p}, n={self.n}")

    @property
    def a(self) -> int:
        return self.n - self.p

    @property
    def b(self) -> int:
        return self.p - self.m

    @property
    def N(self) -> int:
        return self.m + self.n

    def mirrored(self) -> "Fixed":
        """The particle-hole partner ``p -> m + n - p``."""
        return Fixed(self.m, self.n, self.m + self.n - self.p)


@dataclass(frozen=True)
class Arbitrary:
    """Arbitrary particle number on an ``m + n`` mode bipartition."""

    m: int
    n: int

    def __post_init__(self):
        _check_int("m", self.m, 1)
        _check_int("n", self.n, 1)
        if self.m > self.n:
            raise DomainError(f"need m <= n, got m={self.m}, n={self.n}")

    @property
    def a(self) -> int:
        return self.n - self.m

    @property
    def N(self) -> int:
        return self.m + self.n


EnsembleSpec = Union[Fixed, Arbitrary]


@dataclass(frozen=True)
class CapacityResult:
    exact: ExactValue
    float_value: float
    spec: object


@lru_cache(maxsize=64)
def _lcm_squared(c: int) -> int:
    return math.lcm(*range(1, c + 1)) ** 2


def phi(c: int, d: int) -> Fraction:
    """The finite sum Phi_{c,d} as an exact rational.

    ``sum_{k=1}^{c} [c! (c+d-k)!] / [(c+d)! (c-k)!] / k**2``, with
    ``Phi_{0,d} = 0``.

    Examples
    --------
    >>> phi(2, 1)
    Fraction(3, 4)
    """
    _check_int("c", c, 0)
    _check_int("d", d, 0)
    if c == 0:
        return Fraction(0)
    # Common denominator lcm(1..c)^2 keeps the whole sum in integers.
    L = _lcm_squared(c)
    total = 0
    for k in range(1, c + 1):
        # (c+d-k)!/(c-k)! = (c-k+1)(c-k+2)...(c-k+d)
        total += math.prod(range(c - k + 1, c - k + d + 1)) * (L // (k * k))
    return Fraction(total, L * math.prod(range(c + 1, c + d + 1)))


def coefficients_alpha(a: int, b: int, m: int) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """The four rational coefficients entering :func:`f_function`."""
    _check_int("a", a, 0)
    _check_int("b", b, 0)
    _check_int("m", m, 1)
    s = a + b + 2 * m - 1
    p2 = pochhammer(s, 2)
    p3 = pochhammer(s, 3)
    a0 = Fraction(m * (a + m) * (b + m) * (a + b + m), p3)
    a1 = Fraction((a + b) * (a + m - 1) * (a + m), p2)
    a2 = Fraction(-a * (a * a + a * b + 2 * a * m - a + 2 * b * m - b + 2 * m * m - 2 * m), p2)
    a3 = Fraction(m * (a + m - 1), p2) - Fraction(m, 2)
    return a0, a1, a2, a3


def _digamma_diff(x: int, y: int) -> Fraction:
    return (digamma_exact(x) - digamma_exact(y)).as_rational()


def f_function(a: int, b: int, m: int) -> ExactValue:
    """F(a, b) at subsystem dimension ``m``, exactly."""
    a0, a1, a2, a3 = coefficients_alpha(a, b, m)
    bracket = (
        2 * phi(a + m, b)
        + 2 * phi(m, a)
        + trigamma_exact(a + b + m + 1)
        + trigamma_exact(a + m + 1)
        + _digamma_diff(a + m + 1, a + b + m + 1) ** 2
        - trigamma_exact(1)
    )
    return (
        a0 * bracket
        + a1 * digamma_exact(a + m + 1)
        + a2 * digamma_exact(a + 1)
        + a3
    )


def f_function_float(a: int, b: int, m: int) -> float:
    """F(a, b) evaluated in floating point with float polygammas."""
    a0, a1, a2, a3 = (float(q) for q in coefficients_alpha(a, b, m))
    bracket = (
        2 * float(phi(a + m, b))
        + 2 * float(phi(m, a))
        + trigamma(a + b + m + 1)
        + trigamma(a + m + 1)
        + (digamma(a + m + 1) - digamma(a + b + m + 1)) ** 2
        - trigamma(1)
    )
    return a0 * bracket + a1 * digamma(a + m + 1) + a2 * digamma(a + 1) + a3


def _result(exact: ExactValue, spec) -> CapacityResult:
    return CapacityResult(exact=exact, float_value=exact.to_float(), spec=spec)


def mean_capacity_fixed(spec: Fixed) -> CapacityResult:
    """Average capacity at fixed particle number, ``F(b, a) + F(a, b)``."""
    if not isinstance(spec, Fixed):
        raise DomainError(f"expected a Fixed spec, got {spec!r}")
    a, b, m = spec.a, spec.b, spec.m
    return _result(f_function(b, a, m) + f_function(a, b, m), spec)


def mean_capacity_fixed_special(a: int, m: int) -> CapacityResult:
    """Simplified closed forms for ``n - p = p - m = a`` with ``a`` in {0, 1, 2}."""
    if isinstance(a, bool) or not isinstance(a, int) or a not in (0, 1, 2):
        raise UnsupportedCaseError(f"special-case formula exists only for a in {{0, 1, 2}}, got {a!r}")
    _check_int("m", m, 1)
    # psi_1(m+1) - pi^2/4
    t = trigamma_exact(m + 1) - ExactValue(0, 0, Fraction(1, 4))
    if a == 0:
        val = Fraction(-2 * m**3, (2 * m - 1) * (2 * m + 1)) * t - Fraction(
            2 * m * m - 2 * m + 1, 2 * m - 1
        )
    elif a == 1:
        val = Fraction(-2 * m * (m + 1) * (m + 2), (2 * m + 1) * (2 * m + 3)) * t - Fraction(
            m * (2 * m * (m + 3) + 5), (m + 1) * (2 * m + 3)
        )
    else:
        val = (
            Fraction(-2 * m * (m + 2) * (m + 4), (2 * m + 3) * (2 * m + 5)) * t
            + Fraction(4, (m + 1) * (m + 3)) * _digamma_diff(m + 1, 1)
            - Fraction(
                m * (m * m + 4 * m + 5) * (4 * m**3 + 30 * m * m + 72 * m + 57),
                (2 * m + 3) * (2 * m + 5) * pochhammer(m + 1, 3),
            )
        )
    return _result(val, Fixed(m, m + 2 * a, m + a))


def coefficient_beta(m: int, n: int) -> Fraction:
    """``(2m-1)(2n-1) / (4m+4n-2)``."""
    _check_int("m", m, 1)
    _check_int("n", n, 1)
    return Fraction((2 * m - 1) * (2 * n - 1), 4 * m + 4 * n - 2)


def mean_capacity_arbitrary(spec: Arbitrary) -> CapacityResult:
    """Average capacity at arbitrary particle number.

    At ``n == m`` the term ``(n-m)/2 * (psi0(m+n) - psi0(n-m))`` is read as its
    limit ``1/2``, since ``eps * psi0(eps) -> -1``.
    """
    if not isinstance(spec, Arbitrary):
        raise DomainError(f"expected an Arbitrary spec, got {spec!r}")
    m, n = spec.m, spec.n
    beta = coefficient_beta(m, n)
    d = n - m
    if d == 0:
        degenerate = Fraction(1, 2)
    else:
        degenerate = Fraction(d, 2) * _digamma_diff(m + n, d)
    val = (
        beta * (phi(2 * m - 1, d) + phi(m + n - 1, d))
        + Fraction(1, 4) * (phi(m - 1, n) + phi(m - 1, d))
        + (beta / 2 + Fraction(1, 8)) * trigamma_exact(m + n)
        + Fraction(1, 8) * trigamma_exact(n)
        + (beta / 2)
        * (_digamma_diff(2 * n, m + n) ** 2 + trigamma_exact(2 * n) - trigamma_exact(1))
        + Fraction(1, 8) * _digamma_diff(n, m + n) ** 2
        + degenerate
        - m
    )
    return _result(val, spec)


def mean_capacity(spec: EnsembleSpec) -> CapacityResult:
    if isinstance(spec, Fixed):
        return mean_capacity_fixed(spec)
    if isinstance(spec, Arbitrary):
        return mean_capacity_arbitrary(spec)
    raise DomainError(f"unknown ensemble spec {spec!r}")


def asymptotic_limit() -> ExactValue:
    """Per-dimension limit ``pi**2/8 - 1``."""
    return ExactValue(-1, 0, Fraction(1, 8))


def asymptotic_gap(spec: EnsembleSpec) -> float:
    """``E[C]/m - (pi**2/8 - 1)``, signed."""
    r = mean_capacity(spec)
    return (r.exact / spec.m - asymptotic_limit()).to_float()
