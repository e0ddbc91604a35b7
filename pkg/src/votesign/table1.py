"""Full Table 1 replication: exact rejection rates plus exact and simulated coverage."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

from .intervals import METHODS
from .simulation import DEFAULT_SEED, coverage_experiment, exact_coverage
from .votes import PUBLISHED_TABLE1, TABLE1_ALPHA, Table1Row, reproduce_table1, scenario_to_probability_vector

PRINTED_TOLERANCE = 0.02
MC_SE_LIMIT = 4.0
METHOD_GAP = 0.05


@dataclass(frozen=True)
class CoverageCell:
    method: str
    printed: float
    exact: float
    simulated: float
    mc_std_error: float
    replications: int
    flags: tuple[str, ...] = ()

    @property
    def z_score(self) -> float:
        # SE taken from the exact value so a zero simulated rate cannot hide a miss
        se = math.sqrt(self.exact * (1.0 - self.exact) / self.replications) if self.replications else 0.0
        if se == 0.0:
            return 0.0 if self.simulated == self.exact else math.inf
        return (self.simulated - self.exact) / se


@dataclass(frozen=True)
class FullTable1Row:
    row: Table1Row
    printed_pr_r_minus: float
    printed_pr_r_plus: Optional[float]
    coverage: dict = field(default_factory=dict)

    @property
    def rejection_flags(self) -> tuple[str, ...]:
        flags = []
        if round(self.row.pr_r_minus, 3) != self.printed_pr_r_minus:
            flags.append("pr_r_minus_mismatch")
        if self.printed_pr_r_plus is None:
            if not self.row.pr_r_plus < 0.001:
                flags.append("pr_r_plus_mismatch")
        elif round(self.row.pr_r_plus, 3) != self.printed_pr_r_plus:
            flags.append("pr_r_plus_mismatch")
        return tuple(flags)


def _cell_flags(printed, exact, simulated, replications, printed_other) -> tuple[str, ...]:
    flags = []
    if abs(exact - printed) > PRINTED_TOLERANCE:
        flags.append("printed_deviation")
    se = math.sqrt(exact * (1.0 - exact) / replications)
    if abs(simulated - exact) > MC_SE_LIMIT * se and simulated != exact:
        flags.append("mc_disagreement")
    # printed methods nearly agree everywhere else; mark the lower cell of a wide gap
    if abs(printed - printed_other) > METHOD_GAP and printed < printed_other:
        flags.append("method_gap")
    return tuple(flags)


def full_table1(
    replications: int = 10_000,
    seed: int = DEFAULT_SEED,
    level: float = 0.95,
    alpha_one_sided: float = TABLE1_ALPHA,
    workers: int = 1,
) -> list[FullTable1Row]:
    out = []
    for row in reproduce_table1(alpha_one_sided):
        sid, k = row.scenario, row.spec.K
        pr_minus, pr_plus, jeff, wil = PUBLISHED_TABLE1[(sid, k)]
        printed = {"jeffreys": jeff, "wilson": wil}
        pv = scenario_to_probability_vector(row.spec)
        cells = {}
        for method in METHODS:
            exact = exact_coverage(pv, row.pi_plus, method, level)
            rep = coverage_experiment(row.spec, method, level, replications, seed, workers=workers)
            other = printed["wilson" if method == "jeffreys" else "jeffreys"]
            cells[method] = CoverageCell(
                method=method,
                printed=printed[method],
                exact=exact,
                simulated=rep.coverage,
                mc_std_error=rep.mc_std_error,
                flags=_cell_flags(printed[method], exact, rep.coverage, replications, other),
                replications=replications,
            )
        out.append(FullTable1Row(row, pr_minus, pr_plus, cells))
    return out
