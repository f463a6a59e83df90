"""Registry of the summation and integral identities behind the closed forms.

Each identity is checked by evaluating both sides independently: finite sums
term by term, integrals by tanh-sinh quadrature.  Nothing is simplified
symbolically.  Gamma ratios are formed in log space, and every ratio whose
arguments differ by an integer is rewritten as a rising factorial so that
integer parameters never land on a pole.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .errors import DomainError
from .exact_capacity import phi
from .kernel_oracle import (
    integrate,
    jacobi_poly,
    jacobi_table,
    kernel_fixed,
    kernel_fixed_cd,
    norm_h,
    JacobiParams,
)
from .special_fn import (
    EULER_GAMMA_30,
    ExactValue,
    digamma,
    digamma_exact,
    digamma_reflect,
    gamma_product,
    gamma_reflect,
    harmonic,
    pochhammer,
    rising,
    trigamma,
    trigamma_reflect,
)


class IdentityId(enum.Enum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    B4 = "B4"
    B5 = "B5"
    B6 = "B6"
    B7 = "B7"
    B8 = "B8"
    B9 = "B9"
    B10 = "B10"
    B11 = "B11"
    B12 = "B12"
    B13 = "B13"
    B14 = "B14"
    LEMMA1 = "LEMMA1"
    LEMMA2 = "LEMMA2"
    LEMMA3 = "LEMMA3"
    LEMMA4 = "LEMMA4"
    SI_AC = "SI_AC"
    SI_AC2 = "SI_AC2"
    SI_CD = "SI_CD"
    SI_DC2 = "SI_DC2"
    OFGI = "OFGI"
    CD_CONFLUENT = "CD_CONFLUENT"
    ORTHOGONALITY = "ORTHOGONALITY"
    PARITY = "PARITY"
    DIGAMMA_FINITE_SUM = "DIGAMMA_FINITE_SUM"
    DUPLICATION_PSI0 = "DUPLICATION_PSI0"
    DUPLICATION_PSI1 = "DUPLICATION_PSI1"
    PHI_ALT = "PHI_ALT"
    PGNA1 = "PGNA1"
    PGNA2 = "PGNA2"
    PGNA3 = "PGNA3"


@dataclass(frozen=True)
class IdentityCheck:
    id: IdentityId
    params: dict
    lhs: float
    rhs: float
    residual: float


def _residual(lhs, rhs, diff=None):
    if diff is None:
        diff = lhs - rhs
    return abs(diff) / max(1.0, abs(lhs), abs(rhs))


# ------------------------------------------------------------------ helpers

p0 = digamma
p1 = trigamma
G = gamma_product


def _fact_ratio(n: int, k: int) -> int:
    """n! / k! for integers n >= k >= 0."""
    return math.prod(range(k + 1, n + 1))


def _quad(f, lo=-1.0, hi=1.0):
    return integrate(f, lo, hi, levels=12, tol=1e-13, with_gaps=True, vectorized=True).value


# ---------------------------------------------------- finite factorial sums

def _b1(a, m):
    return sum(p0(i + a) for i in range(1, m + 1)), (m + a) * p0(m + a + 1) - a * p0(a + 1) - m


def _b2(a, m):
    lhs = sum(p1(i + a) for i in range(1, m + 1))
    rhs = (m + a) * p1(m + a + 1) - a * p1(a + 1) + p0(m + a + 1) - p0(a + 1)
    return lhs, rhs


def _b3(a, m):
    lhs = sum(p0(i + a) / (i + a) for i in range(1, m + 1))
    rhs = (p1(m + a + 1) - p1(a + 1) + p0(m + a + 1) ** 2 - p0(a + 1) ** 2) / 2
    return lhs, rhs


def _b4(m):
    lhs = sum(p0(m + 1 - i) / i for i in range(1, m + 1))
    rhs = p0(m + 1) ** 2 - p0(1) * p0(m + 1) + p1(m + 1) - p1(1)
    return lhs, rhs


def _b5(m):
    lhs = sum(p0(m + 1 + i) / i for i in range(1, m + 1))
    rhs = p0(m + 1) ** 2 - p0(1) * p0(m + 1) - p1(m + 1) / 2 + p1(1) / 2
    return lhs, rhs


def _b6(a, b, m):
    lhs = sum(p0(i + a) * p0(i + b) for i in range(1, m + 1))
    rhs = (
        (b - a) * sum(p0(a + i) / (b + i) for i in range(1, m))
        + (m + a) * p0(m + a) * p0(m + b)
        - a * p0(a + 1) * p0(b + 1)
        - (m + a - 1) * p0(m + a)
        + a * p0(a + 1)
        - (m + b) * p0(m + b)
        + (b + 1) * p0(b + 1)
        + 2 * m
        - 2
    )
    return lhs, rhs


def _b7(a, b, m):
    lhs = sum(p0(i + b) / (i + a) for i in range(1, m + 1))
    rhs = (
        -sum(p0(i + a) / (i + b) for i in range(1, m + 1))
        + p0(m + a + 1) * p0(m + b + 1)
        - p0(a + 1) * p0(b + 1)
        + (p0(m + a + 1) - p0(m + b + 1) - p0(a + 1) + p0(b + 1)) / (a - b)
    )
    return lhs, rhs


def _b8(a, m):
    lhs = sum(p0(a + 1 - i) / i for i in range(1, m + 1))
    rhs = (
        -sum(p0(i + a - m) / i for i in range(1, m + 1))
        + (p0(a - m) + p0(a + 1)) * (p0(m + 1) - p0(1))
        + ((p0(a - m) - p0(a + 1)) ** 2 + p1(a + 1) - p1(a - m)) / 2
    )
    return lhs, rhs


def _b9(a, b, m):
    lhs = sum(p0(a + b + i) / i for i in range(1, m + 1))
    rhs = (
        sum(p0(b + i) / i for i in range(1, m + 1))
        - sum(p0(b + i + m) / (b + i - 1) for i in range(1, a + 1))
        + (
            p1(b)
            + (p0(a + b) - p0(b)) * (p0(a + b) + p0(b) + 2 * (p0(m + 1) - p0(1)))
            - p1(a + b)
        )
        / 2
    )
    return lhs, rhs


def _b10(m, n):
    lhs = sum(_fact_ratio(n - i, m - i) for i in range(1, m + 1))
    rhs = Fraction(_fact_ratio(n, m - 1), n - m + 1)
    return float(lhs), float(rhs), float(lhs - rhs)


def _b11(m, n):
    lhs = sum(Fraction(_fact_ratio(n - i, m - i), i) for i in range(1, m + 1))
    rhs = _fact_ratio(n, m) * (digamma_exact(n + 1) - digamma_exact(n - m + 1))
    return float(lhs), rhs.to_float(), (lhs - rhs).to_float()


def _b12_sum(m, n):
    return sum(Fraction(_fact_ratio(n - i, m - i), i * i) for i in range(1, m + 1))


def _b12_bracket(m, n) -> ExactValue:
    """The bracket of the (n-i)!/((m-i)! i^2) identity, exactly."""
    psi = digamma_exact
    lin = sum((psi(i + n - m) * Fraction(1, i) for i in range(1, m + 1)), ExactValue())
    # psi0^2(X) - psi0^2(Y) = (psi0(X) - psi0(Y)) (psi0(X) + psi0(Y)) keeps the algebra closed
    d_sq = (psi(n - m + 1) - psi(n + 1)).as_rational()
    sq = d_sq * (psi(n - m + 1) + psi(n + 1))
    tri = trigamma_exact_diff(n - m + 1, n + 1)
    cross = (psi(n + 1) - psi(n - m + 1) - psi(m + 1) + psi(1)).as_rational() * psi(n - m)
    return lin + (tri + sq) / 2 + cross


def trigamma_exact_diff(x: int, y: int) -> Fraction:
    return harmonic(y - 1, 2) - harmonic(x - 1, 2)


def _b12(m, n):
    lhs = _b12_sum(m, n)
    rhs = _b12_bracket(m, n) * _fact_ratio(n, m)
    return float(lhs), rhs.to_float(), (rhs - lhs).to_float()


def _b13(a, m, n):
    lhs = sum(Fraction(math.factorial(n - i), math.factorial(m + a - i)) for i in range(1, m + 1))
    rhs = Fraction(
        Fraction(math.factorial(n), math.factorial(a + m - 1))
        - Fraction(math.factorial(n - m), math.factorial(a - 1)),
        n - m - a + 1,
    )
    return float(lhs), float(rhs), float(lhs - rhs)


def _b14(a, m, n):
    psi = digamma_exact
    lhs = sum(
        (psi(m + a - i + 1) * Fraction(math.factorial(n - i), math.factorial(m + a - i)) for i in range(1, m + 1)),
        ExactValue(),
    )
    s = 1 - a - m + n
    rhs = (
        Fraction(math.factorial(n), math.factorial(a + m - 1)) * (psi(a + m) - Fraction(1, s))
        - Fraction(math.factorial(n - m), math.factorial(a - 1)) * (psi(a) - Fraction(1, s))
    ) / s
    return lhs.to_float(), rhs.to_float(), (lhs - rhs).to_float()


# ------------------------------------------------------------------- lemmas
# Both sides are divided by the gamma prefactor of the right-hand sum.

def _lemma1(a, b, c, m):
    pre = [b + m, c + m + 1, a + b + m]
    lhs = sum(
        G(pre, [i, a + i, m + 1 - i, m + b + 1 - i]) / (c + i) for i in range(1, m + 1)
    )
    rhs = sum(G([c - i + m + 1, a + b - i + 2 * m], [m - i + 1, a - i + m + 1]) for i in range(1, m + 1))
    return lhs, rhs


def _lemma2(a, b, c, m):
    pre = [m + b, m + a + b, c, m + c]
    lhs = sum(G(pre, [c + i, a + i, m + 1 - i, m + b + 1 - i]) for i in range(1, m + 1))
    rhs = sum(G([m + a + b + i - 1, m + c - i], [a + i, m - i + 1]) for i in range(1, m + 1))
    return lhs, rhs


def _lemma3(a, b, c, m):
    pre = [a, a + m, 1 + b + m, b + c + m]
    lhs = sum(G(pre, [c + i, a + i, m - i + 1, b - i + m + 1]) / i for i in range(1, m + 1))
    rhs = sum(G([a - i + m, b + c + i + m], [c + i, m - i + 1]) / i for i in range(1, m + 1))
    rhs += (p0(a) - p0(a + m)) * G([a + m, b + c + m], [c, m + 1])
    return lhs, rhs


def _lemma4(a, b, c, d, m):
    pre = [a + b + m, c + d + m]
    lhs = sum(G(pre, [c + i, a + i, d + m - i + 1, b + m - i + 1]) for i in range(1, m + 1))
    rhs = sum(
        G([c + d + i - 1, a + b - i + 2 * m], [d, a + m, c + i, b - i + m + 1]) for i in range(1, m + 1)
    ) + sum(
        G([c + d + i - 1, a + b - i + 2 * m], [c, b + m, d + i, a - i + m + 1]) for i in range(1, m + 1)
    )
    return lhs, rhs


def _ofgi(a, b, m):
    # divided through by the right-hand side, which then reads 1
    pre = [m, a + m, b + m, a + b + m]
    lhs = sum(
        G(pre, [i, a + i, m - i + 1, m + b + 1 - i, a + b + 2 * m - 1]) for i in range(1, m + 1)
    )
    return lhs, 1.0


# --------------------------------------------------------- integral identities

def _jac(k, a, b, x):
    return jacobi_table(k, a, b, x)[k]


def _si_ac(a, b, c, k):
    def f(x, glo, ghi):
        return (ghi / 2) ** a * (glo / 2) ** c * _jac(k, a, b, x)

    lhs = _quad(f)
    rhs = 2 * G([c + 1, k + 1 + a], [k + 1, a + c + k + 2]) * pochhammer(c - b - k + 1, k)
    return lhs, rhs


def _si_ac2(a1, b1, a2, b2, c, k1, k2):
    def f(x, glo, ghi):
        return (ghi / 2) ** a1 * (glo / 2) ** c * _jac(k1, a1, b1, x) * _jac(k2, a2, b2, x)

    lhs = _quad(f)
    total = 0.0
    for i in range(k2 + 1):
        total += (
            (-1) ** (i + k2)
            * G([i + 1 + c, i + b2 + 1 + a2 + k2], [i + 1, i + b2 + 1, k2 - i + 1, a1 + c + i + k1 + 2])
            * pochhammer(c + i - b1 - k1 + 1, k1)
        )
    rhs = 2 * rising(k1 + 1, a1) / rising(b2 + k2 + 1, a2) * total
    return lhs, rhs


def _si_cd(a, b, c, d, k):
    def f(x, glo, ghi):
        return (ghi / 2) ** d * (glo / 2) ** c * _jac(k, a, b, x)

    lhs = _quad(f)
    total = 0.0
    for i in range(k + 1):
        total += (
            (-1) ** i
            * G([c + i + 1, d - i + k + 1], [i + 1, k - i + 1])
            * pochhammer(d - a - i + 1, i)
            * pochhammer(c - b + i - k + 1, k - i)
        )
    rhs = 2 * G([], [c + d + k + 2]) * total
    return lhs, rhs


def _si_dc2(a1, b1, a2, b2, c, d, k1, k2):
    def f(x, glo, ghi):
        return (ghi / 2) ** d * (glo / 2) ** c * _jac(k1, a1, b1, x) * _jac(k2, a2, b2, x)

    lhs = _quad(f)
    total = 0.0
    for i in range(k2 + 1):
        outer = (-1) ** i * G([], [i + 1, a2 + i + 1, k2 - i + 1, b2 - i + k2 + 1])
        inner = 0.0
        for j in range(k1 + 1):
            A = c - b1 - i + k2 + 1
            r = k1 - j
            inner += (
                (-1) ** j
                * rising(k1 - j + 1, d + i)
                / math.factorial(j)
                * G([c - i + j + k2 + 1], [])
                * pochhammer(A - r, r)
                * pochhammer(d - a1 + i - j + 1, j)
            )
        total += outer * inner
    rhs = 2 * G([a2 + k2 + 1, b2 + k2 + 1], [c + d + k1 + k2 + 2]) * total
    return lhs, rhs


def _cd_confluent(a, b, m, x):
    return float(kernel_fixed(x, m, a, b)), float(kernel_fixed_cd(x, m, a, b))


def _orthogonality(a, b, k, l):
    def f(x, glo, ghi):
        return (ghi / 2) ** a * (glo / 2) ** b * _jac(k, a, b, x) * _jac(l, a, b, x)

    lhs = _quad(f)
    return lhs, norm_h(k, a, b) if k == l else 0.0


def _parity(a, b, k, x):
    lhs = float(jacobi_poly(JacobiParams(a, b, k), -x))
    return lhs, (-1) ** k * float(jacobi_poly(JacobiParams(b, a, k), x))


# ------------------------------------------------------- polygamma identities

def _digamma_finite_sum(l):
    # float recurrence-plus-series route against the harmonic sum
    return digamma(l), float(harmonic(l - 1)) - float(EULER_GAMMA_30)


def _dup_psi0(k, q):
    return p0(q * k), math.log(q) + sum(p0(k + i / q) for i in range(q)) / q


def _dup_psi1(k, q):
    return p1(q * k), sum(p1(k + i / q) for i in range(q)) / q**2


def _phi_alt(c, d):
    lhs = phi(c, d)
    rhs = _b12_bracket(c, c + d)
    return float(lhs), rhs.to_float(), (rhs - lhs).to_float()


def _pgna1(l, eps):
    lhs = gamma_reflect(-l + eps) * math.factorial(l) * eps * (-1) ** l
    return lhs, 1 + p0(l + 1) * eps


def _pgna2(l, eps):
    lhs = eps * digamma_reflect(-l + eps)
    return lhs, -1 + p0(l + 1) * eps + (2 * p1(1) - p1(l + 1)) * eps**2


def _pgna3(l, eps):
    lhs = eps**2 * trigamma_reflect(-l + eps)
    zeta2 = math.pi**2 / 6
    return lhs, 1 + (-p1(l + 1) + p1(1) + zeta2) * eps**2


# ------------------------------------------------------------------ registry

Constraint = tuple[str, Callable[[dict], bool]]


@dataclass(frozen=True)
class _Entry:
    evaluate: Callable
    names: tuple[str, ...]
    ints: frozenset = frozenset()
    constraints: tuple[Constraint, ...] = ()
    sample: Callable[[np.random.Generator], dict] | None = None
    tol: float = 1e-9


def _r(gen, lo=0.1, hi=5.0):
    return float(gen.uniform(lo, hi))


def _i(gen, lo=1, hi=12):
    return int(gen.integers(lo, hi + 1))


def _distinct_pair(gen):
    while True:
        a, b = _r(gen, 0.0, 5.0), _r(gen, 0.0, 5.0)
        if abs(a - b) > 0.05:
            return a, b


_GE0 = lambda *ks: tuple((f"{k} >= 0", lambda p, k=k: p[k] >= 0) for k in ks)  # noqa: E731
_GT = lambda k, lim: ((f"{k} > {lim}", lambda p: p[k] > lim),)  # noqa: E731
_M1 = ((("m >= 1"), lambda p: p["m"] >= 1),)
_REAL_POS = lambda *ks: tuple((f"{k} > 0", lambda p, k=k: p[k] > 0) for k in ks)  # noqa: E731
_JAC = lambda *ks: tuple((f"{k} > -1", lambda p, k=k: p[k] > -1) for k in ks)  # noqa: E731
_A_NE_B = (("a != b", lambda p: p["a"] != p["b"]),)
_N_GT_M = (("n > m", lambda p: p["n"] > p["m"]),)

REGISTRY: dict[IdentityId, _Entry] = {
    IdentityId.B1: _Entry(_b1, ("a", "m"), frozenset("m"), _GE0("a") + _M1,
                          lambda g: {"a": _r(g, 0, 5), "m": _i(g)}),
    IdentityId.B2: _Entry(_b2, ("a", "m"), frozenset("m"), _GE0("a") + _M1,
                          lambda g: {"a": _r(g, 0, 5), "m": _i(g)}),
    IdentityId.B3: _Entry(_b3, ("a", "m"), frozenset("m"), _GE0("a") + _M1,
                          lambda g: {"a": _r(g, 0, 5), "m": _i(g)}),
    IdentityId.B4: _Entry(_b4, ("m",), frozenset("m"), _M1, lambda g: {"m": _i(g)}),
    IdentityId.B5: _Entry(_b5, ("m",), frozenset("m"), _M1, lambda g: {"m": _i(g)}),
    IdentityId.B6: _Entry(_b6, ("a", "b", "m"), frozenset("m"), _GE0("a", "b") + _A_NE_B + _M1,
                          lambda g: dict(zip("ab", _distinct_pair(g)), m=_i(g))),
    IdentityId.B7: _Entry(_b7, ("a", "b", "m"), frozenset("m"), _GE0("a", "b") + _A_NE_B + _M1,
                          lambda g: dict(zip("ab", _distinct_pair(g)), m=_i(g))),
    IdentityId.B8: _Entry(_b8, ("a", "m"), frozenset("m"), _M1 + (("a > m", lambda p: p["a"] > p["m"]),),
                          lambda g: (lambda m: {"a": m + _r(g), "m": m})(_i(g))),
    IdentityId.B9: _Entry(_b9, ("a", "b", "m"), frozenset("am"), _GE0("a") + _REAL_POS("b") + _M1,
                          lambda g: {"a": _i(g, 0, 12), "b": _r(g), "m": _i(g)}),
    IdentityId.B10: _Entry(_b10, ("m", "n"), frozenset("mn"), _M1 + _N_GT_M,
                           lambda g: (lambda m: {"m": m, "n": m + _i(g)})(_i(g))),
    IdentityId.B11: _Entry(_b11, ("m", "n"), frozenset("mn"), _M1 + _N_GT_M,
                           lambda g: (lambda m: {"m": m, "n": m + _i(g)})(_i(g))),
    IdentityId.B12: _Entry(_b12, ("m", "n"), frozenset("mn"), _M1 + _N_GT_M,
                           lambda g: (lambda m: {"m": m, "n": m + _i(g)})(_i(g))),
    IdentityId.B13: _Entry(_b13, ("a", "m", "n"), frozenset("amn"),
                           _M1 + (("a >= 1", lambda p: p["a"] >= 1), ("n >= m + a", lambda p: p["n"] >= p["m"] + p["a"])),
                           lambda g: (lambda m, a: {"a": a, "m": m, "n": m + a + _i(g, 0, 12)})(_i(g), _i(g))),
    IdentityId.B14: _Entry(_b14, ("a", "m", "n"), frozenset("amn"),
                           _M1 + (("a >= 1", lambda p: p["a"] >= 1), ("n >= m + a", lambda p: p["n"] >= p["m"] + p["a"])),
                           lambda g: (lambda m, a: {"a": a, "m": m, "n": m + a + _i(g, 0, 12)})(_i(g), _i(g))),
    IdentityId.LEMMA1: _Entry(_lemma1, ("a", "b", "c", "m"), frozenset("m"), _REAL_POS("a", "b", "c") + _M1,
                              lambda g: {"a": _r(g), "b": _r(g), "c": _r(g), "m": _i(g)}),
    IdentityId.LEMMA2: _Entry(_lemma2, ("a", "b", "c", "m"), frozenset("cm"), _REAL_POS("a", "b") + _GT("c", 0) + _M1,
                              lambda g: {"a": _r(g), "b": _r(g), "c": _i(g), "m": _i(g)}),
    IdentityId.LEMMA3: _Entry(_lemma3, ("a", "b", "c", "m"), frozenset("cm"), _REAL_POS("a", "b") + _GT("c", 0) + _M1,
                              lambda g: {"a": _r(g), "b": _r(g), "c": _i(g), "m": _i(g)}),
    IdentityId.LEMMA4: _Entry(_lemma4, ("a", "b", "c", "d", "m"), frozenset("cdm"),
                              _REAL_POS("a", "b") + _GT("c", 0) + _GT("d", 0) + _M1,
                              lambda g: {"a": _r(g), "b": _r(g), "c": _i(g), "d": _i(g), "m": _i(g)}),
    IdentityId.OFGI: _Entry(_ofgi, ("a", "b", "m"), frozenset("m"), _REAL_POS("a", "b") + _M1,
                            lambda g: {"a": _r(g), "b": _r(g), "m": _i(g)}),
    IdentityId.SI_AC: _Entry(_si_ac, ("a", "b", "c", "k"), frozenset("k"), _JAC("a", "b", "c") + _GE0("k"),
                             lambda g: {"a": _r(g), "b": _r(g), "c": _r(g), "k": _i(g, 0, 12)}),
    IdentityId.SI_AC2: _Entry(_si_ac2, ("a1", "b1", "a2", "b2", "c", "k1", "k2"), frozenset({"k1", "k2"}),
                              _JAC("a1", "b1", "a2", "b2", "c") + _GE0("k1", "k2"),
                              lambda g: {"a1": _r(g), "b1": _r(g), "a2": _r(g), "b2": _r(g), "c": _r(g),
                                         "k1": _i(g, 0, 8), "k2": _i(g, 0, 8)}),
    IdentityId.SI_CD: _Entry(_si_cd, ("a", "b", "c", "d", "k"), frozenset("k"), _JAC("a", "b", "c", "d") + _GE0("k"),
                             lambda g: {"a": _r(g), "b": _r(g), "c": _r(g), "d": _r(g), "k": _i(g, 0, 12)}),
    IdentityId.SI_DC2: _Entry(_si_dc2, ("a1", "b1", "a2", "b2", "c", "d", "k1", "k2"), frozenset({"k1", "k2"}),
                              _JAC("a1", "b1", "a2", "b2", "c", "d") + _GE0("k1", "k2"),
                              lambda g: {"a1": _r(g), "b1": _r(g), "a2": _r(g), "b2": _r(g), "c": _r(g),
                                         "d": _r(g), "k1": _i(g, 0, 8), "k2": _i(g, 0, 8)}),
    IdentityId.CD_CONFLUENT: _Entry(_cd_confluent, ("a", "b", "m", "x"), frozenset("m"),
                                    _JAC("a", "b") + _M1 + (("-1 <= x <= 1", lambda p: -1 <= p["x"] <= 1),),
                                    lambda g: {"a": _r(g), "b": _r(g), "m": _i(g), "x": _r(g, -1, 1)}),
    IdentityId.ORTHOGONALITY: _Entry(_orthogonality, ("a", "b", "k", "l"), frozenset("kl"),
                                     _JAC("a", "b") + _GE0("k", "l"),
                                     lambda g: {"a": _r(g), "b": _r(g), "k": _i(g, 0, 6), "l": _i(g, 0, 6)}),
    IdentityId.PARITY: _Entry(_parity, ("a", "b", "k", "x"), frozenset("k"),
                              _JAC("a", "b") + _GE0("k") + (("-1 <= x <= 1", lambda p: -1 <= p["x"] <= 1),),
                              lambda g: {"a": _r(g), "b": _r(g), "k": _i(g, 0, 12), "x": _r(g, -1, 1)}),
    IdentityId.DIGAMMA_FINITE_SUM: _Entry(_digamma_finite_sum, ("l",), frozenset("l"), _GT("l", 0),
                                          lambda g: {"l": _i(g, 1, 100)}),
    IdentityId.DUPLICATION_PSI0: _Entry(_dup_psi0, ("k", "q"), frozenset("q"),
                                        _REAL_POS("k") + (("q in {2, 3, 4}", lambda p: p["q"] in (2, 3, 4)),),
                                        lambda g: {"k": _r(g), "q": _i(g, 2, 4)}),
    IdentityId.DUPLICATION_PSI1: _Entry(_dup_psi1, ("k", "q"), frozenset("q"),
                                        _REAL_POS("k") + (("q in {2, 3, 4}", lambda p: p["q"] in (2, 3, 4)),),
                                        lambda g: {"k": _r(g), "q": _i(g, 2, 4)}),
    IdentityId.PHI_ALT: _Entry(_phi_alt, ("c", "d"), frozenset("cd"), _GT("c", 0) + _GT("d", 0),
                               lambda g: {"c": _i(g), "d": _i(g)}),
    IdentityId.PGNA1: _Entry(_pgna1, ("l", "eps"), frozenset("l"), _GE0("l") + (("0 < eps <= 1e-4", lambda p: 0 < p["eps"] <= 1e-4),),
                             lambda g: {"l": _i(g, 0, 12), "eps": 1e-5}, tol=1e-6),
    IdentityId.PGNA2: _Entry(_pgna2, ("l", "eps"), frozenset("l"), _GE0("l") + (("0 < eps <= 1e-4", lambda p: 0 < p["eps"] <= 1e-4),),
                             lambda g: {"l": _i(g, 0, 12), "eps": 1e-5}, tol=1e-6),
    IdentityId.PGNA3: _Entry(_pgna3, ("l", "eps"), frozenset("l"), _GE0("l") + (("0 < eps <= 1e-4", lambda p: 0 < p["eps"] <= 1e-4),),
                             lambda g: {"l": _i(g, 0, 12), "eps": 1e-5}, tol=1e-6),
}


def tolerance(id: IdentityId) -> float:
    return REGISTRY[IdentityId(id)].tol


def _validate(id: IdentityId, entry: _Entry, params: dict) -> dict:
    missing = [k for k in entry.names if k not in params]
    extra = [k for k in params if k not in entry.names]
    if missing or extra:
        raise DomainError(f"{id.value}: expected parameters {entry.names}, missing {missing}, unexpected {extra}")
    clean = {}
    for k in entry.names:
        v = params[k]
        if k in entry.ints:
            if isinstance(v, bool) or not float(v).is_integer():
                raise DomainError(f"{id.value}: {k} must be an integer, got {v!r}")
            v = int(v)
        else:
            v = float(v)
            if not math.isfinite(v):
                raise DomainError(f"{id.value}: {k} must be finite, got {v!r}")
        clean[k] = v
    for text, ok in entry.constraints:
        if not ok(clean):
            raise DomainError(f"{id.value}: constraint {text} violated by {clean}")
    return clean


def check_identity(id, params: dict) -> IdentityCheck:
    """Evaluate both sides of one identity at ``params``.

    Raises
    ------
    DomainError
        A parameter is missing or breaks the identity's domain; the message
        names the violated constraint.
    """
    id = IdentityId(id)
    entry = REGISTRY[id]
    clean = _validate(id, entry, params)
    out = entry.evaluate(**clean)
    lhs, rhs = float(out[0]), float(out[1])
    diff = out[2] if len(out) > 2 else None
    return IdentityCheck(id, clean, lhs, rhs, _residual(lhs, rhs, diff))


@dataclass(frozen=True)
class FuzzEntry:
    id: IdentityId
    n_draws: int
    max_residual: float
    tolerance: float
    worst_params: dict

    @property
    def passed(self) -> bool:
        return math.isfinite(self.max_residual) and self.max_residual < self.tolerance


@dataclass(frozen=True)
class FuzzReport:
    seed: int
    entries: tuple[FuzzEntry, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[FuzzEntry]:
        return [e for e in self.entries if not e.passed]

    def to_records(self) -> list[dict]:
        return [
            {
                "id": e.id.value,
                "n_draws": e.n_draws,
                "max_residual": e.max_residual,
                "tolerance": e.tolerance,
                "passed": e.passed,
                "worst_params": e.worst_params,
            }
            for e in self.entries
        ]


def fuzz_identities(n_draws: int, seed: int, ids=None) -> FuzzReport:
    """Check every registered identity at ``n_draws`` random parameter sets.

    Each identity draws from its own generator, keyed by ``seed`` and its
    position in the enumeration, so the report is reproducible and a subset
    run sees the same parameters as a full run.
    """
    if n_draws < 1:
        raise DomainError(f"n_draws must be >= 1, got {n_draws}")
    order = list(IdentityId)
    chosen = order if ids is None else [IdentityId(i) for i in ids]
    entries = []
    for id in chosen:
        entry = REGISTRY[id]
        gen = np.random.default_rng([seed, order.index(id)])
        worst, worst_params = -1.0, {}
        for _ in range(n_draws):
            params = entry.sample(gen)
            res = check_identity(id, params).residual
            if not math.isfinite(res):
                res = math.inf
            if res > worst:
                worst, worst_params = res, params
        entries.append(FuzzEntry(id, n_draws, worst, entry.tol, worst_params))
    return FuzzReport(seed, tuple(entries))
