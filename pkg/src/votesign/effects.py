"""From study design to the probability that an effect estimate is positive.

A one-sample study of size ``N`` with standardized true effect ``delta``
yields a positive estimate with probability ``Phi(sqrt(N) * delta)``. Across
studies with differing ``(N, delta)`` the count of positive estimates is
Poisson-Binomial, not Binomial.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .dist import ProbabilityVector, std_normal_cdf, std_normal_quantile
from .errors import DomainError


@dataclass(frozen=True)
class StudyEffect:
    sample_size: int
    delta: float

    def __post_init__(self):
        n = self.sample_size
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise DomainError(f"sample_size={n!r} must be a positive integer")
        if not math.isfinite(self.delta):
            raise DomainError(f"delta={self.delta!r} must be finite")


@dataclass(frozen=True)
class RandomEffectsSpec:
    """True study effects drawn as ``delta ~ N(theta, tau**2)``."""

    theta: float
    tau: float

    def __post_init__(self):
        if not math.isfinite(self.theta):
            raise DomainError(f"theta={self.theta!r} must be finite")
        if not (math.isfinite(self.tau) and self.tau >= 0.0):
            raise DomainError(f"tau={self.tau!r} must be finite and nonnegative")


def zp(p: float) -> float:
    """Critical value with upper-tail area ``p``: ``Phi(zp(p)) == 1 - p``."""
    return std_normal_quantile(1.0 - p)


def sign_probability(study: StudyEffect) -> float:
    return std_normal_cdf(math.sqrt(study.sample_size) * study.delta)


def p_value_cdf(study: StudyEffect, p: float) -> float:
    """``Pr(P <= p)`` for the one-sided z-test p-value of ``H0: mu = 0``."""
    if not (0.0 < p < 1.0):
        raise DomainError(f"p={p!r} must lie strictly inside (0, 1)")
    shift = math.sqrt(study.sample_size) * study.delta
    # 1 - Phi(a) written as Phi(-a) to keep the upper tail accurate
    return std_normal_cdf(shift - zp(p))


def iso_curve(pi_target: float, sample_sizes: Iterable[int]) -> list[tuple[int, float]]:
    """``(N, delta)`` pairs with ``Phi(sqrt(N) * delta) == pi_target``."""
    if not (0.0 < pi_target < 1.0):
        raise DomainError(f"pi_target={pi_target!r} must lie strictly inside (0, 1)")
    sizes = list(sample_sizes)
    if not sizes:
        raise DomainError("sample_sizes must not be empty")
    z = 0.0 if pi_target == 0.5 else std_normal_quantile(pi_target)
    out = []
    for n in sizes:
        if isinstance(n, bool) or int(n) != n or n < 1:
            raise DomainError(f"sample size {n!r} must be a positive integer")
        out.append((int(n), z / math.sqrt(n)))
    return out


def marginal_sign_probability(sample_size: int, re: RandomEffectsSpec) -> float:
    """``E[Phi(sqrt(N) * delta)]`` for ``delta ~ N(theta, tau**2)``.

    Closed form: ``Phi(sqrt(N) * theta / sqrt(1 + N * tau**2))``.
    """
    StudyEffect(sample_size, re.theta)
    n = sample_size
    return std_normal_cdf(math.sqrt(n) * re.theta / math.sqrt(1.0 + n * re.tau**2))


def two_sample_sign_probability(per_arm: int, delta: float) -> float:
    """Extension to a two-arm trial with ``per_arm`` patients in each arm.

    The difference in means has standard error ``sigma * sqrt(2 / N)``, so
    the one-sample formula applies with ``N / 2`` in place of ``N``.
    """
    StudyEffect(per_arm, delta)
    return std_normal_cdf(math.sqrt(per_arm / 2.0) * delta)


def probability_vector(studies: Sequence[StudyEffect]) -> ProbabilityVector:
    return ProbabilityVector(sign_probability(s) for s in studies)
