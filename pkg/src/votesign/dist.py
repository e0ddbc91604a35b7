"""Exact distributions: standard normal, Binomial and Poisson-Binomial.

The Poisson-Binomial PMF is built by folding one Bernoulli factor at a time
into the probability generating polynomial, ``prod_i (1 - p_i + p_i t)``.
That is O(n^2) and exact up to rounding, which is all we need for the
tens of studies a vote count deals with.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from statistics import NormalDist
from typing import Iterable, Sequence

import numpy as np

from ._backend import kernels
from .errors import DomainError

_SQRT2 = math.sqrt(2.0)
_STD = NormalDist()


@dataclass(frozen=True)
class ProbabilityVector:
    """Success probabilities ``(p_1, ..., p_n)`` of independent Bernoulli trials.

    Values must lie strictly inside (0, 1); 0.5 is allowed.
    """

    probs: tuple[float, ...]

    def __init__(self, probs: Iterable[float]):
        values = tuple(float(p) for p in probs)
        if not values:
            raise DomainError("probability vector must contain at least one value")
        for i, p in enumerate(values):
            if not (0.0 < p < 1.0):
                raise DomainError(f"probs[{i}]={p!r} must lie strictly inside (0, 1)")
        object.__setattr__(self, "probs", values)

    def __len__(self) -> int:
        return len(self.probs)

    def __iter__(self):
        return iter(self.probs)

    @property
    def n(self) -> int:
        return len(self.probs)

    def mirrored(self) -> ProbabilityVector:
        return ProbabilityVector(1.0 - p for p in self.probs)

    def as_array(self) -> np.ndarray:
        return np.array(self.probs, dtype=np.float64)


@dataclass(frozen=True)
class BinomialParams:
    n: int
    pi: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n={self.n!r} must be a positive integer")
        if not (0.0 <= self.pi <= 1.0):
            raise DomainError(f"pi={self.pi!r} must lie in [0, 1]")


def std_normal_cdf(z: float) -> float:
    if not math.isfinite(z):
        raise DomainError(f"z={z!r} must be finite")
    return 0.5 * math.erfc(-z / _SQRT2)


def std_normal_quantile(p: float) -> float:
    """Inverse of :func:`std_normal_cdf`."""
    if not (0.0 < p < 1.0):
        raise DomainError(f"p={p!r} must lie strictly inside (0, 1)")
    if p > 0.5:
        # 1 - p is exact here; the lower tail keeps full relative precision
        return -std_normal_quantile(1.0 - p)
    z = _STD.inv_cdf(p)
    # one Newton step against our own cdf keeps the pair mutually consistent
    dens = math.exp(-0.5 * z * z) / math.sqrt(2.0 * math.pi)
    if dens > 1e-300:
        z -= (std_normal_cdf(z) - p) / dens
    return z


def _check_count(x: int, n: int) -> None:
    if isinstance(x, bool) or int(x) != x or not (0 <= x <= n):
        raise DomainError(f"x={x!r} must be an integer in [0, {n}]")


def binomial_pmf(params: BinomialParams, x: int) -> float:
    n, pi = params.n, params.pi
    _check_count(x, n)
    if pi == 0.5:
        return math.comb(n, x) / 2**n
    return math.comb(n, x) * pi**x * (1.0 - pi) ** (n - x)


def binomial_pmf_vector(params: BinomialParams) -> np.ndarray:
    return np.array([binomial_pmf(params, x) for x in range(params.n + 1)])


def fair_tail_le(n: int, x: int) -> float:
    """``Pr(X <= x)`` for ``X ~ Bin(n, 1/2)``, summed in exact integers."""
    if x < 0:
        return 0.0
    if x >= n:
        return 1.0
    return sum(math.comb(n, k) for k in range(x + 1)) / 2**n


def fair_tail_ge(n: int, x: int) -> float:
    """``Pr(X >= x)`` for ``X ~ Bin(n, 1/2)``."""
    return fair_tail_le(n, n - x)


def _as_vector(pv) -> ProbabilityVector:
    return pv if isinstance(pv, ProbabilityVector) else ProbabilityVector(pv)


def poisson_binomial_pmf(pv: ProbabilityVector | Sequence[float]) -> np.ndarray:
    """Full PMF over ``0..n`` by iterative convolution."""
    pv = _as_vector(pv)
    return kernels.pb_pmf(pv.as_array())


def poisson_binomial_cdf(pv: ProbabilityVector | Sequence[float], x: int) -> float:
    pv = _as_vector(pv)
    _check_count(x, pv.n)
    if x == pv.n:
        return 1.0
    return min(1.0, float(math.fsum(poisson_binomial_pmf(pv)[: x + 1])))


def poisson_binomial_sf(pv: ProbabilityVector | Sequence[float], x: int) -> float:
    """``Pr(X >= x)``; summed from the upper tail so small values keep precision."""
    pv = _as_vector(pv)
    _check_count(x, pv.n)
    if x == 0:
        return 1.0
    return min(1.0, float(math.fsum(poisson_binomial_pmf(pv)[x:])))


def poisson_binomial_pmf_bruteforce(probs: Sequence[float]) -> np.ndarray:
    """Reference PMF by enumerating all ``2**n`` outcome patterns.

    Independent of the convolution path; only practical for n up to ~20.
    """
    probs = [float(p) for p in probs]
    n = len(probs)
    if n == 0:
        raise DomainError("probability vector must contain at least one value")
    buckets: list[list[float]] = [[] for _ in range(n + 1)]
    for pattern in itertools.product((0, 1), repeat=n):
        w = 1.0
        for bit, p in zip(pattern, probs):
            w *= p if bit else 1.0 - p
        buckets[sum(pattern)].append(w)
    return np.array([math.fsum(b) for b in buckets])
