"""Numerical oracle: Jacobi polynomials, one-point kernels and quadrature.

The average capacity is ``int u(x) K(x, x) dx`` over the ensemble's support,
where ``K`` is the Christoffel-Darboux kernel of the Jacobi weight.  The
integral is computed by tanh-sinh quadrature, which copes with the
logarithmic endpoint behaviour of ``u``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DomainError, EvaluationError, ToleranceNotMet
from .exact_capacity import Arbitrary, Fixed
from .special_fn import log_gamma, pochhammer


@dataclass(frozen=True)
class JacobiParams:
    a: float
    b: float
    k: int

    def __post_init__(self):
        if not (self.a > -1 and self.b > -1):
            raise DomainError(f"Jacobi parameters need a, b > -1, got a={self.a}, b={self.b}")
        if isinstance(self.k, bool) or not isinstance(self.k, (int, np.integer)) or self.k < 0:
            raise DomainError(f"degree k must be a nonnegative integer, got {self.k!r}")


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    est_error: float
    n_nodes: int
    level: int = 0


# ---------------------------------------------------------------- polynomials

def jacobi_table(kmax: int, a: float, b: float, x):
    """Values of ``P_0 .. P_kmax`` with parameters (a, b) at ``x``.

    Uses the three-term recurrence.  ``x`` may be a scalar or an array; the
    result has shape ``(kmax + 1,) + shape(x)``.
    """
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax == 0:
        return out
    out[1] = (a + 1) + (a + b + 2) * (x - 1) / 2
    for n in range(2, kmax + 1):
        s = 2 * n + a + b
        c0 = 2 * n * (n + a + b) * (s - 2)
        c1 = (s - 1) * (s * (s - 2) * x + a * a - b * b)
        c2 = 2 * (n + a - 1) * (n + b - 1) * s
        out[n] = (c1 * out[n - 1] - c2 * out[n - 2]) / c0
    return out


def jacobi_poly(params: JacobiParams, x):
    """``P_k^{(a,b)}(x)`` by recurrence."""
    return jacobi_table(params.k, params.a, params.b, x)[params.k][()]


def jacobi_series_plus(params: JacobiParams, x: float) -> float:
    """Hypergeometric series in powers of (1+x)/2.  Low degree only."""
    a, b, k = params.a, params.b, params.k
    y = (1 + x) / 2
    s = sum(
        pochhammer(-k, i) * pochhammer(k + a + b + 1, i) / (pochhammer(b + 1, i) * math.factorial(i)) * y**i
        for i in range(k + 1)
    )
    return (-1) ** k * pochhammer(b + 1, k) / math.factorial(k) * s


def jacobi_series_mixed(params: JacobiParams, x: float) -> float:
    """Series in products of powers of (1-x)/2 and (1+x)/2.  Low degree only."""
    a, b, k = params.a, params.b, params.k
    lo, hi = (1 - x) / 2, (1 + x) / 2
    return sum(
        (-1) ** i
        * math.exp(log_gamma(a + k + 1) - log_gamma(a + i + 1))
        * pochhammer(k + b - i + 1, i)
        / (math.factorial(i) * math.factorial(k - i))
        * lo**i
        * hi ** (k - i)
        for i in range(k + 1)
    )


def norm_h(k: int, a: float, b: float) -> float:
    """Squared norm of ``P_k^{(a,b)}`` under ((1-x)/2)^a ((1+x)/2)^b on [-1, 1]."""
    JacobiParams(a, b, k)
    if k == 0:
        return 2 * math.exp(log_gamma(a + 1) + log_gamma(b + 1) - log_gamma(a + b + 2))
    lg = log_gamma(k + a + 1) + log_gamma(k + b + 1) - log_gamma(k + 1) - log_gamma(k + a + b + 1)
    return 2 * math.exp(lg) / (2 * k + a + b + 1)


def norm_h_even(k: int, a: float) -> float:
    """Squared norm of ``P_{2k}^{(a,a)}`` under ((1-x^2)/4)^a on [0, 1]."""
    JacobiParams(a, a, k)
    if k == 0:
        return math.exp(2 * log_gamma(a + 1) - log_gamma(2 * a + 2))
    lg = 2 * log_gamma(2 * k + a + 1) - log_gamma(2 * k + 1) - log_gamma(2 * k + 2 * a + 1)
    return math.exp(lg) / (4 * k + 2 * a + 1)


# -------------------------------------------------------------------- kernels

def _kahan_sum(terms):
    total = np.zeros_like(terms[0])
    comp = np.zeros_like(terms[0])
    for t in terms:
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
    return total


def _check_m(m):
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)) or m < 1:
        raise DomainError(f"m must be a positive integer, got {m!r}")


def _fixed_weight(x, a, b, gap_lo=None, gap_hi=None):
    x = np.asarray(x, dtype=float)
    g_lo = 1 + x if gap_lo is None else np.asarray(gap_lo)
    g_hi = 1 - x if gap_hi is None else np.asarray(gap_hi)
    return (g_hi / 2) ** a * (g_lo / 2) ** b


def _arbitrary_weight(x, a, gap_hi=None):
    x = np.asarray(x, dtype=float)
    g_hi = 1 - x if gap_hi is None else np.asarray(gap_hi)
    return ((1 + x) * g_hi / 4) ** a


def kernel_fixed(x, m: int, a: float, b: float, *, gap_lo=None, gap_hi=None):
    """Diagonal kernel ``w(x) sum_{k<m} P_k(x)^2 / h_k`` on [-1, 1]."""
    _check_m(m)
    table = jacobi_table(m - 1, a, b, x)
    terms = [table[k] ** 2 / norm_h(k, a, b) for k in range(m)]
    return (_fixed_weight(x, a, b, gap_lo, gap_hi) * _kahan_sum(terms))[()]


def kernel_arbitrary(x, m: int, a: float, *, gap_hi=None):
    """Diagonal kernel built from even ``P_{2k}^{(a,a)}`` on [0, 1]."""
    _check_m(m)
    table = jacobi_table(2 * m - 2, a, a, x)
    terms = [table[2 * k] ** 2 / norm_h_even(k, a) for k in range(m)]
    return (_arbitrary_weight(x, a, gap_hi) * _kahan_sum(terms))[()]


def kernel_fixed_cd(x, m: int, a: float, b: float):
    """Same kernel as :func:`kernel_fixed`, via the confluent Christoffel-Darboux form."""
    _check_m(m)
    p = jacobi_table(m, a, b, x)
    q = jacobi_table(m - 1, a + 1, b + 1, x)
    scale = norm_h(m - 1, a, b) * (a + b + 2 * m - 1) * (a + b + 2 * m)
    al1 = m * (a + b + m) * (a + b + m + 1) / scale
    al2 = m * (a + b + m) ** 2 / scale
    lower = q[m - 2] * p[m] if m >= 2 else 0.0
    cd = al1 * q[m - 1] * p[m - 1] - al2 * lower
    return (_fixed_weight(x, a, b) * cd)[()]


# ----------------------------------------------------------------- quadrature

_T_MAX = 4.0


def _nodes(level: int, lo: float, hi: float):
    h = 2.0**-level
    jmax = int(_T_MAX / h)
    j = np.arange(-jmax, jmax + 1)
    if level > 0:
        j = j[j % 2 != 0]
    t = j * h
    u = 0.5 * math.pi * np.sinh(np.abs(t))
    width = hi - lo
    dist = width / (np.exp(2 * u) + 1)
    weight = 0.5 * width * 0.5 * math.pi * np.cosh(t) / np.cosh(u) ** 2
    pos = t > 0
    x = np.where(pos, hi - dist, lo + dist)
    gap_lo = np.where(pos, width - dist, dist)
    gap_hi = np.where(pos, dist, width - dist)
    return x, gap_lo, gap_hi, weight, h


def integrate(
    f: Callable,
    lo: float = 0.0,
    hi: float = 1.0,
    levels: int = 12,
    tol: float = 1e-10,
    *,
    with_gaps: bool = False,
    vectorized: bool = False,
    min_level: int = 3,
) -> QuadratureResult:
    """Tanh-sinh quadrature of ``f`` over ``(lo, hi)``.

    The step is halved at each level, reusing earlier nodes, until two
    successive estimates differ by less than ``tol``.

    Parameters
    ----------
    f : callable
        Integrand.  With ``with_gaps`` it is called as ``f(x, x - lo, hi - x)``
        where the distances are computed without cancellation.
    levels : int
        Finest level allowed; level ``L`` uses step ``2**-L``.
    vectorized : bool
        Call ``f`` once per level on arrays instead of per node.

    Raises
    ------
    EvaluationError
        ``f`` produced NaN or infinity.
    ToleranceNotMet
        The cap was hit first; ``.best`` holds the finest estimate.
    """
    if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
        raise DomainError(f"need finite lo < hi, got ({lo}, {hi})")
    if levels < 1:
        raise DomainError(f"levels must be >= 1, got {levels}")
    raw = 0.0
    n_nodes = 0
    prev = None
    result = None
    for level in range(levels + 1):
        x, g_lo, g_hi, w, h = _nodes(level, lo, hi)
        keep = (g_lo > 0) & (g_hi > 0)
        if not with_gaps:
            keep &= (x > lo) & (x < hi)
        x, g_lo, g_hi, w = x[keep], g_lo[keep], g_hi[keep], w[keep]
        args = (x, g_lo, g_hi) if with_gaps else (x,)
        if vectorized:
            vals = np.asarray(f(*args), dtype=float)
        else:
            vals = np.array([f(*row) for row in zip(*args)], dtype=float)
        if not np.all(np.isfinite(vals)):
            bad = x[~np.isfinite(vals)][0]
            raise EvaluationError(f"integrand is not finite at x = {bad!r}")
        raw += float(np.dot(w, vals))
        n_nodes += x.size
        est = h * raw
        if prev is not None:
            result = QuadratureResult(est, abs(est - prev), n_nodes, level)
            if level >= min_level and result.est_error < tol:
                return result
        prev = est
    raise ToleranceNotMet(
        f"tanh-sinh did not reach {tol:g} by level {levels} (last difference {result.est_error:.3g})",
        best=result,
    )


def _u_gaps(g_lo, g_hi):
    # (1-x^2)/4 * ln^2((1+x)/(1-x)) written in terms of 1+x and 1-x
    return g_lo * g_hi / 4 * (np.log(g_lo) - np.log(g_hi)) ** 2


def density_integrand(spec):
    """Vectorised ``f(x, gap_lo, gap_hi)`` giving ``K(x, x)`` for ``spec``."""
    if isinstance(spec, Fixed):
        m, a, b = spec.m, spec.a, spec.b

        def f(x, g_lo, g_hi):
            return kernel_fixed(x, m, a, b, gap_lo=g_lo, gap_hi=g_hi)

        return f, -1.0, 1.0
    if isinstance(spec, Arbitrary):
        m, a = spec.m, spec.a

        def g(x, g_lo, g_hi):
            return kernel_arbitrary(x, m, a, gap_hi=g_hi)

        return g, 0.0, 1.0
    raise DomainError(f"unknown ensemble spec {spec!r}")


def quad_mean_capacity(spec, levels: int = 12, tol: float = 1e-10) -> QuadratureResult:
    """Average capacity as the integral of ``u * K`` over the support."""
    kern, lo, hi = density_integrand(spec)
    if isinstance(spec, Fixed):
        def f(x, g_lo, g_hi):
            return _u_gaps(g_lo, g_hi) * kern(x, g_lo, g_hi)
    else:
        def f(x, g_lo, g_hi):
            return _u_gaps(1 + x, g_hi) * kern(x, g_lo, g_hi)
    return integrate(f, lo, hi, levels, tol, with_gaps=True, vectorized=True)


def bin_probabilities(spec, edges, levels: int = 12, tol: float = 1e-12) -> np.ndarray:
    """Probability that one eigenvalue (of ``m``) falls in each bin."""
    kern, lo, hi = density_integrand(spec)
    edges = np.asarray(edges, dtype=float)
    if edges[0] < lo - 1e-12 or edges[-1] > hi + 1e-12 or np.any(np.diff(edges) <= 0):
        raise DomainError(f"bin edges must increase within [{lo}, {hi}]")
    probs = []
    for left, right in zip(edges[:-1], edges[1:]):
        # the kernel wants distances to the support ends, not the bin ends
        def f(x, g_lo, g_hi, left=left, right=right):
            d_lo = g_lo if left == lo else x - lo
            d_hi = g_hi if right == hi else hi - x
            return kern(x, d_lo, d_hi)

        probs.append(integrate(f, left, right, levels, tol, with_gaps=True, vectorized=True).value)
    return np.array(probs) / spec.m
