"""Wilson and Jeffreys intervals for a binomial proportion.

Both treat the count as ``Bin(n, pi)`` with a single ``pi``. The coverage
experiments in :mod:`votesign.simulation` show what happens when it is not.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

from .dist import _check_count, std_normal_quantile
from .errors import DomainError

Method = Literal["wilson", "jeffreys"]
METHODS: tuple[str, ...] = ("wilson", "jeffreys")

_CF_EPS = 1e-16
_CF_TINY = 1e-300
_CF_MAX_ITER = 10_000


@dataclass(frozen=True)
class IntervalEstimate:
    lower: float
    upper: float
    level: float
    method: str
    point: float
    boundary_adjusted: bool = False

    def contains(self, value: float) -> bool:
        # closed interval
        return self.lower <= value <= self.upper


def _check_args(n: int, x: int, level: float) -> None:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n={n!r} must be a positive integer")
    _check_count(x, n)
    if not (0.0 < level < 1.0):
        raise DomainError(f"level={level!r} must lie strictly inside (0, 1)")


def wilson_interval(n: int, x: int, level: float = 0.95) -> IntervalEstimate:
    _check_args(n, x, level)
    z = std_normal_quantile(1.0 - (1.0 - level) / 2.0)
    z2 = z * z
    center = (x + z2 / 2.0) / (n + z2)
    half = z / (n + z2) * math.sqrt(x * (n - x) / n + z2 / 4.0)
    # at x = 0 or x = n the bound is exactly 0 or 1; avoid rounding residue
    lower = 0.0 if x == 0 else max(0.0, center - half)
    upper = 1.0 if x == n else min(1.0, center + half)
    return IntervalEstimate(lower, upper, level, "wilson", x / n)


def _beta_cf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta (modified Lentz)."""
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def regularized_incomplete_beta(x: float, a: float, b: float) -> float:
    """``I_x(a, b)``, the Beta(a, b) distribution function at ``x``."""
    if a <= 0.0 or b <= 0.0:
        raise DomainError(f"shape parameters must be positive, got a={a!r}, b={b!r}")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"x={x!r} must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_cf(a, b, x) / a
    return 1.0 - front * _beta_cf(b, a, 1.0 - x) / b


def beta_quantile(p: float, a: float, b: float) -> float:
    """Inverse of :func:`regularized_incomplete_beta` in ``x``, by bisection."""
    if not (0.0 <= p <= 1.0):
        raise DomainError(f"p={p!r} must lie in [0, 1]")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return 1.0
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if regularized_incomplete_beta(mid, a, b) < p:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def jeffreys_interval(n: int, x: int, level: float = 0.95) -> IntervalEstimate:
    """Equal-tailed Beta(x + 1/2, n - x + 1/2) interval.

    The lower bound is set to 0 when ``x == 0`` and the upper to 1 when
    ``x == n``; ``boundary_adjusted`` records that this happened.
    """
    _check_args(n, x, level)
    tail = (1.0 - level) / 2.0
    a, b = x + 0.5, n - x + 0.5
    lower = 0.0 if x == 0 else beta_quantile(tail, a, b)
    upper = 1.0 if x == n else beta_quantile(1.0 - tail, a, b)
    return IntervalEstimate(lower, upper, level, "jeffreys", x / n, x in (0, n))


def interval(method: Method, n: int, x: int, level: float = 0.95) -> IntervalEstimate:
    if method == "wilson":
        return wilson_interval(n, x, level)
    if method == "jeffreys":
        return jeffreys_interval(n, x, level)
    raise DomainError(f"method={method!r} must be one of {METHODS}")
