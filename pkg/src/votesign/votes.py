"""Rejection behaviour of the sign test when the count is Poisson-Binomial.

Scenarios follow a two-point design: ``K`` of ``n`` studies share a large
sign probability ``pi_L > 0.5`` and the rest a small one ``pi_S < 0.5``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .dist import ProbabilityVector, poisson_binomial_cdf, poisson_binomial_sf
from .errors import DomainError
from .signtest import critical_values


@dataclass(frozen=True)
class ScenarioSpec:
    n: int
    K: int
    pi_S: float
    pi_L: float

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise DomainError(f"n={self.n!r} must be a positive integer")
        if isinstance(self.K, bool) or int(self.K) != self.K or not (0 <= self.K <= self.n):
            raise DomainError(f"K={self.K!r} must be an integer in [0, {self.n}]")
        if not (0.0 < self.pi_S < 0.5 < self.pi_L < 1.0):
            raise DomainError(
                f"need 0 < pi_S < 0.5 < pi_L < 1, got pi_S={self.pi_S!r}, pi_L={self.pi_L!r}"
            )


@dataclass(frozen=True)
class RejectionProbabilities:
    pr_r_minus: float
    pr_r_plus: float
    c_minus: int
    c_plus: int
    alpha_one_sided: float


def scenario_to_probability_vector(spec: ScenarioSpec) -> ProbabilityVector:
    return ProbabilityVector([spec.pi_L] * spec.K + [spec.pi_S] * (spec.n - spec.K))


def pi_plus(spec: ScenarioSpec) -> float:
    """Share of studies whose true effect is positive."""
    return spec.K / spec.n


def h1_holds(pv: ProbabilityVector) -> bool:
    """True when strictly more than half of the studies have ``pi_i > 0.5``."""
    favourable = sum(1 for p in pv if p > 0.5)
    return 2 * favourable > len(pv)


def rejection_probabilities(
    pv: ProbabilityVector, alpha_one_sided: float = 0.025
) -> RejectionProbabilities:
    """Exact ``Pr(X <= c_minus)`` and ``Pr(X >= c_plus)`` under ``PoisBin(pv)``."""
    crit = critical_values(pv.n, alpha_one_sided)
    if crit.degenerate:
        raise DomainError(
            f"sign test has no rejection region for n={pv.n} at one-sided alpha={alpha_one_sided}"
        )
    return RejectionProbabilities(
        pr_r_minus=poisson_binomial_cdf(pv, crit.c_minus),
        pr_r_plus=poisson_binomial_sf(pv, crit.c_plus),
        c_minus=crit.c_minus,
        c_plus=crit.c_plus,
        alpha_one_sided=alpha_one_sided,
    )


# (scenario id, pi_S, pi_L, K values) for the published n = 12 demonstration
TABLE1_SCENARIOS: tuple[tuple[int, float, float, tuple[int, ...]], ...] = (
    (1, 0.05, 0.55, (7, 8, 9, 10)),
    (2, 0.10, 0.60, (7, 8)),
    (3, 0.15, 0.65, (7,)),
)
TABLE1_N = 12
TABLE1_ALPHA = 0.025

# Published cells keyed by (scenario, K): Pr(R-), Pr(R+), Jeffreys, Wilson.
# A Pr(R+) of None stands for a printed "<0.001".
PUBLISHED_TABLE1: dict[tuple[int, int], tuple[float, Optional[float], float, float]] = {
    (1, 7): (0.126, None, 0.666, 0.662),
    (1, 8): (0.075, None, 0.530, 0.528),
    (1, 9): (0.044, 0.001, 0.397, 0.180),
    (1, 10): (0.025, 0.005, 0.115, 0.117),
    (2, 7): (0.063, None, 0.797, 0.798),
    (2, 8): (0.035, 0.001, 0.680, 0.678),
    (3, 7): (0.028, 0.002, 0.889, 0.888),
}


def table1_specs() -> list[tuple[int, ScenarioSpec]]:
    return [
        (sid, ScenarioSpec(TABLE1_N, k, pi_s, pi_l))
        for sid, pi_s, pi_l, ks in TABLE1_SCENARIOS
        for k in ks
    ]


def scenario_specs(scenario: int, n: int = TABLE1_N) -> list[ScenarioSpec]:
    for sid, pi_s, pi_l, ks in TABLE1_SCENARIOS:
        if sid == scenario:
            return [ScenarioSpec(n, k, pi_s, pi_l) for k in ks]
    raise DomainError(f"unknown scenario {scenario!r}; choose from 1, 2, 3")


@dataclass(frozen=True)
class Table1Row:
    scenario: int
    spec: ScenarioSpec
    pi_plus: float
    rejection: RejectionProbabilities
    h1: bool

    @property
    def pr_r_minus(self) -> float:
        return self.rejection.pr_r_minus

    @property
    def pr_r_plus(self) -> float:
        return self.rejection.pr_r_plus


def reproduce_table1(alpha_one_sided: float = TABLE1_ALPHA) -> list[Table1Row]:
    """The seven scenario rows with exact rejection probabilities."""
    rows = []
    for sid, spec in table1_specs():
        pv = scenario_to_probability_vector(spec)
        rows.append(
            Table1Row(sid, spec, pi_plus(spec), rejection_probabilities(pv, alpha_one_sided), h1_holds(pv))
        )
    return rows
