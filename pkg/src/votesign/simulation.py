"""Seeded Monte Carlo coverage of binomial intervals under Poisson-Binomial data.

Random numbers come from a counter-based SplitMix64 construction: the
``i``-th uniform of replication ``r`` is a pure function of
``(seed, r, i)``. Replications can therefore be computed in any order, in
any number of threads, and still give bit-identical results.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from ._backend import kernels
from ._pykernels import GAMMA, MASK64, mix64
from .dist import ProbabilityVector, poisson_binomial_pmf
from .errors import DomainError
from .intervals import METHODS, interval
from .votes import ScenarioSpec, pi_plus, scenario_to_probability_vector

DEFAULT_SEED = 20200901


def _check_seed(seed: int) -> int:
    if isinstance(seed, bool) or int(seed) != seed or not (0 <= seed <= MASK64):
        raise DomainError(f"seed={seed!r} must be an unsigned 64-bit integer")
    return int(seed)


class Substream:
    """Uniform stream for one replication, keyed by ``(seed, index)``."""

    def __init__(self, seed: int, index: int):
        self.seed = _check_seed(seed)
        self.index = int(index)
        seed_key = mix64(self.seed + GAMMA)
        self._key = mix64(seed_key + (self.index + 1) * GAMMA)
        self._counter = 0

    def next_u64(self) -> int:
        self._counter += 1
        return mix64(self._key + self._counter * GAMMA)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0**-53


def draw_poisson_binomial(pv: ProbabilityVector, stream: Substream) -> int:
    """Sum of independent Bernoulli(p_i) draws."""
    return sum(1 for p in pv if stream.uniform() < p)


def draw_counts(
    pv: ProbabilityVector, seed: int, start: int, stop: int, workers: int = 1
) -> np.ndarray:
    """Counts for replications ``start..stop-1``; same as drawing one by one."""
    seed = _check_seed(seed)
    probs = pv.as_array()
    if workers <= 1 or stop - start < 2 * workers:
        return kernels.draw_counts(probs, seed, start, stop)
    bounds = np.linspace(start, stop, workers + 1).astype(np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(
            lambda ab: kernels.draw_counts(probs, seed, int(ab[0]), int(ab[1])),
            zip(bounds[:-1], bounds[1:]),
        )
        return np.concatenate(list(parts))


@dataclass(frozen=True)
class CoverageReport:
    spec: Optional[ScenarioSpec]
    method: str
    level: float
    replications: int
    seed: int
    coverage: float
    mc_std_error: float
    target: float
    n: int
    hits: int


def _containment_table(n: int, target: float, method: str, level: float) -> list[bool]:
    return [interval(method, n, x, level).contains(target) for x in range(n + 1)]


def _resolve(model, target) -> tuple[Optional[ScenarioSpec], ProbabilityVector, float]:
    if isinstance(model, ScenarioSpec):
        return model, scenario_to_probability_vector(model), pi_plus(model)
    if isinstance(model, ProbabilityVector):
        if target is None:
            raise DomainError("a target proportion is required with a direct probability vector")
        return None, model, float(target)
    raise DomainError(f"expected ScenarioSpec or ProbabilityVector, got {type(model).__name__}")


def coverage_experiment(
    model: Union[ScenarioSpec, ProbabilityVector],
    method: str = "wilson",
    level: float = 0.95,
    replications: int = 10_000,
    seed: int = DEFAULT_SEED,
    *,
    target: Optional[float] = None,
    workers: int = 1,
) -> CoverageReport:
    """Simulated coverage of ``target`` (``K/n`` for a scenario).

    Each replication draws ``x ~ PoisBin(pv)`` and checks whether the
    interval built from ``(n, x)`` contains the target.
    """
    if method not in METHODS:
        raise DomainError(f"method={method!r} must be one of {METHODS}")
    if isinstance(replications, bool) or int(replications) != replications or replications < 1:
        raise DomainError(f"replications={replications!r} must be a positive integer")
    seed = _check_seed(seed)
    spec, pv, tgt = _resolve(model, target)
    contains = np.array(_containment_table(pv.n, tgt, method, level))
    counts = draw_counts(pv, seed, 0, int(replications), workers)
    hits = int(np.count_nonzero(contains[counts]))
    cov = hits / replications
    return CoverageReport(
        spec=spec,
        method=method,
        level=level,
        replications=int(replications),
        seed=seed,
        coverage=cov,
        mc_std_error=math.sqrt(cov * (1.0 - cov) / replications),
        target=tgt,
        n=pv.n,
        hits=hits,
    )


def exact_coverage(pv: ProbabilityVector, pi_target: float, method: str, level: float = 0.95) -> float:
    """``sum_x Pr(X = x) * [interval(n, x) contains pi_target]`` under ``PoisBin(pv)``."""
    if method not in METHODS:
        raise DomainError(f"method={method!r} must be one of {METHODS}")
    pmf = poisson_binomial_pmf(pv)
    inside = _containment_table(pv.n, pi_target, method, level)
    return math.fsum(float(p) for p, ok in zip(pmf, inside) if ok)
