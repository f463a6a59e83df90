"""Gamma-family special functions.

Floating-point digamma/trigamma use upward recurrence to ``x >= 10`` followed
by the Bernoulli asymptotic series.  Values at positive integers are also
available exactly, as :class:`ExactValue` objects over the basis
``{1, euler_gamma, pi**2}`` with rational coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational

from .errors import DomainError, NonRationalProductError

EULER_GAMMA_30 = "0.577215664901532860606512090082"
PI_SQUARED_30 = "9.86960440108935861883449099988"

_SHIFT = 10.0
# B_2, B_4, ..., B_12
_BERNOULLI_EVEN = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730)


def _as_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    raise TypeError(f"expected a rational number, got {type(q).__name__}")


@dataclass(frozen=True)
class ExactValue:
    """The number ``q0 + q_gamma * euler_gamma + q_pi2 * pi**2``.

    Addition, subtraction and scaling by rationals are exact.  Products are
    only defined when one factor is purely rational.
    """

    q0: Fraction = Fraction(0)
    q_gamma: Fraction = Fraction(0)
    q_pi2: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "q0", _as_fraction(self.q0))
        object.__setattr__(self, "q_gamma", _as_fraction(self.q_gamma))
        object.__setattr__(self, "q_pi2", _as_fraction(self.q_pi2))

    @classmethod
    def coerce(cls, value) -> "ExactValue":
        if isinstance(value, ExactValue):
            return value
        return cls(_as_fraction(value))

    @property
    def is_rational(self) -> bool:
        return self.q_gamma == 0 and self.q_pi2 == 0

    def as_rational(self) -> Fraction:
        if not self.is_rational:
            raise NonRationalProductError(f"{self!r} is not purely rational")
        return self.q0

    def __add__(self, other):
        try:
            o = ExactValue.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactValue(self.q0 + o.q0, self.q_gamma + o.q_gamma, self.q_pi2 + o.q_pi2)

    __radd__ = __add__

    def __neg__(self):
        return ExactValue(-self.q0, -self.q_gamma, -self.q_pi2)

    def __sub__(self, other):
        try:
            o = ExactValue.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def _scale(self, q: Fraction) -> "ExactValue":
        return ExactValue(self.q0 * q, self.q_gamma * q, self.q_pi2 * q)

    def __mul__(self, other):
        if isinstance(other, ExactValue):
            if other.is_rational:
                return self._scale(other.q0)
            if self.is_rational:
                return other._scale(self.q0)
            raise NonRationalProductError(
                "product of two values with transcendental parts is not representable"
            )
        try:
            return self._scale(_as_fraction(other))
        except TypeError:
            return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, ExactValue):
            other = other.as_rational()
        try:
            q = _as_fraction(other)
        except TypeError:
            return NotImplemented
        return self._scale(1 / q)

    def square(self) -> "ExactValue":
        return ExactValue(self.as_rational() ** 2)

    def to_float(self) -> float:
        # Decimal keeps large cancelling coefficients from losing digits.
        with localcontext() as ctx:
            ctx.prec = 60
            total = Decimal(self.q0.numerator) / Decimal(self.q0.denominator)
            if self.q_gamma:
                total += (
                    Decimal(self.q_gamma.numerator) / Decimal(self.q_gamma.denominator)
                ) * Decimal(EULER_GAMMA_30)
            if self.q_pi2:
                total += (
                    Decimal(self.q_pi2.numerator) / Decimal(self.q_pi2.denominator)
                ) * Decimal(PI_SQUARED_30)
            return float(total)

    __float__ = to_float

    def __str__(self):
        return f"{self.q0} + ({self.q_gamma})*gamma + ({self.q_pi2})*pi^2"


def _check_real_positive(x, name="x"):
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    if x <= 0:
        raise DomainError(f"{name} must be > 0, got {x!r}")


def _check_positive_int(n, name="n"):
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"{name} must be an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"{name} must be >= 1, got {n}")


def digamma(x: float) -> float:
    """psi_0(x) for real ``x > 0``."""
    x = float(x)
    _check_real_positive(x)
    acc = 0.0
    while x < _SHIFT:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    p = inv2
    for l, b in enumerate(_BERNOULLI_EVEN, start=1):
        series += b / (2 * l) * p
        p *= inv2
    return acc + math.log(x) - 0.5 / x - series


def trigamma(x: float) -> float:
    """psi_1(x) for real ``x > 0``."""
    x = float(x)
    _check_real_positive(x)
    acc = 0.0
    while x < _SHIFT:
        acc += 1.0 / (x * x)
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    series = 0.0
    p = inv2 * inv
    for b in _BERNOULLI_EVEN:
        series += b * p
        p *= inv2
    return acc + inv + 0.5 * inv2 + series


def harmonic(n: int, order: int = 1) -> Fraction:
    """Generalised harmonic number ``sum_{k=1}^n 1/k**order`` (0 for n = 0)."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    return sum((Fraction(1, k**order) for k in range(1, n + 1)), Fraction(0))


def digamma_exact(n: int) -> ExactValue:
    """psi_0(n) = H_{n-1} - euler_gamma for a positive integer ``n``."""
    _check_positive_int(n)
    return ExactValue(harmonic(n - 1), -1, 0)


def trigamma_exact(n: int) -> ExactValue:
    """psi_1(n) = pi**2/6 - H^{(2)}_{n-1} for a positive integer ``n``."""
    _check_positive_int(n)
    return ExactValue(-harmonic(n - 1, 2), 0, Fraction(1, 6))


def _is_nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for ``x > 0``."""
    x = float(x)
    _check_real_positive(x)
    return math.lgamma(x)


def pochhammer(a, n: int):
    """Rising factorial (a)_n as an explicit product.

    Integer or Fraction ``a`` gives an exact result.
    """
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    out = 1
    for j in range(n):
        out = out * (a + j)
    return out


def _sin_pi(x: float) -> float:
    # reduce first so that sin sees the small offset from the nearest integer
    k = round(x)
    r = x - k
    s = math.sin(math.pi * r)
    return -s if k % 2 else s


def _tan_pi(x: float) -> float:
    r = x - round(x)
    return math.tan(math.pi * r)


def gamma_reflect(x: float) -> float:
    """Gamma(x) for real ``x`` off the poles, via reflection below 1/2."""
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"x must be finite, got {x!r}")
    if _is_nonpositive_integer(x):
        raise DomainError(f"Gamma has a pole at x = {x!r}")
    if x >= 0.5:
        return math.gamma(x)
    return math.pi / (_sin_pi(x) * math.gamma(1.0 - x))


def digamma_reflect(x: float) -> float:
    """psi_0(x) for real ``x`` off the poles."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"digamma has a pole at x = {x!r}")
    if x > 0:
        return digamma(x)
    return digamma(1.0 - x) - math.pi / _tan_pi(x)


def trigamma_reflect(x: float) -> float:
    """psi_1(x) for real ``x`` off the poles."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"trigamma has a pole at x = {x!r}")
    if x > 0:
        return trigamma(x)
    s = _sin_pi(x)
    return math.pi**2 / (s * s) - trigamma(1.0 - x)


def log_abs_gamma(x: float) -> tuple[float, int]:
    """Return ``(ln|Gamma(x)|, sign(Gamma(x)))`` for real ``x`` off the poles."""
    x = float(x)
    if _is_nonpositive_integer(x):
        raise DomainError(f"Gamma has a pole at x = {x!r}")
    if x > 0:
        return math.lgamma(x), 1
    s = _sin_pi(x)
    return math.log(math.pi) - math.log(abs(s)) - math.lgamma(1.0 - x), (1 if s > 0 else -1)


def gamma_product(num=(), den=()) -> float:
    """prod Gamma(num) / prod Gamma(den), accumulated in log space.

    A pole in ``den`` makes the product vanish; a pole in ``num`` is an error.
    """
    for y in den:
        if _is_nonpositive_integer(float(y)):
            return 0.0
    # direct evaluation is more accurate than exp of a long lgamma sum
    if all(0 < y < 170 for y in (*num, *den)):
        top = math.prod(math.gamma(y) for y in num)
        bottom = math.prod(math.gamma(y) for y in den)
        if math.isfinite(top) and math.isfinite(bottom) and top > 1e-300 and bottom > 1e-300:
            return top / bottom
    log_total = 0.0
    sign = 1
    for y in num:
        lg, s = log_abs_gamma(y)
        log_total += lg
        sign *= s
    for y in den:
        lg, s = log_abs_gamma(y)
        log_total -= lg
        sign *= s
    return sign * math.exp(log_total)


def rising(x: float, a: float) -> float:
    """Generalised Pochhammer (x)_a = Gamma(x+a)/Gamma(x) for real ``a``.

    Integer ``a >= 0`` is handled as a product so that ``x`` may sit on a pole.
    """
    if float(a).is_integer() and a >= 0:
        return float(pochhammer(float(x), int(a)))
    return gamma_product((x + a,), (x,))
