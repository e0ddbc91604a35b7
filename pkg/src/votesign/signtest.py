"""Exact sign test of ``H0: pi = 0.5`` for a count of positive effects."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Optional

from .dist import _check_count, fair_tail_ge, fair_tail_le
from .errors import DomainError

Direction = Literal["plus", "minus"]
Sidedness = Literal["one", "two"]

REJECT_PLUS = "reject_plus"
REJECT_MINUS = "reject_minus"
FAIL_TO_REJECT = "fail_to_reject"


@dataclass(frozen=True)
class CriticalValues:
    c_minus: Optional[int]
    c_plus: Optional[int]
    exact_size: float

    @property
    def degenerate(self) -> bool:
        return self.c_minus is None


@dataclass(frozen=True)
class SignTestReport:
    n: int
    x: int
    p_plus: float
    p_minus: float
    p_two_sided: float
    alpha: float
    sidedness: str
    c_minus: Optional[int]
    c_plus: Optional[int]
    exact_size: float
    decision: str
    degenerate: bool = False
    ties_excluded: int = 0

    def as_record(self) -> dict:
        return {
            "n": self.n,
            "x": self.x,
            "ties_excluded": self.ties_excluded,
            "sidedness": self.sidedness,
            "alpha": self.alpha,
            "p_plus": self.p_plus,
            "p_minus": self.p_minus,
            "p_two_sided": self.p_two_sided,
            "c_minus": self.c_minus,
            "c_plus": self.c_plus,
            "exact_size": self.exact_size,
            "decision": self.decision,
            "degenerate": self.degenerate,
        }


def _check_n(n: int) -> None:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError(f"n={n!r} must be a positive integer")


def p_value_one_sided(n: int, x: int, direction: Direction) -> float:
    """``Pr(X >= x)`` toward H+ or ``Pr(X <= x)`` toward H-, under Bin(n, 1/2)."""
    _check_n(n)
    _check_count(x, n)
    if direction == "plus":
        return fair_tail_ge(n, x)
    if direction == "minus":
        return fair_tail_le(n, x)
    raise DomainError(f"direction={direction!r} must be 'plus' or 'minus'")


def p_value_two_sided(n: int, x: int) -> float:
    _check_n(n)
    _check_count(x, n)
    return min(1.0, 2.0 * min(fair_tail_ge(n, x), fair_tail_le(n, x)))


def critical_values(n: int, alpha_one_sided: float) -> CriticalValues:
    """Largest ``c_minus`` with ``Pr(X <= c_minus) <= alpha``; ``c_plus = n - c_minus``.

    Both are None when even ``Pr(X = 0)`` exceeds alpha.
    """
    _check_n(n)
    if not (0.0 < alpha_one_sided < 0.5):
        raise DomainError(f"alpha_one_sided={alpha_one_sided!r} must lie in (0, 0.5)")
    c, size = None, 0.0
    # tail grows with c, so stop at the first violation
    for k in range(n + 1):
        tail = fair_tail_le(n, k)
        if tail > alpha_one_sided:
            break
        c, size = k, tail
    if c is None:
        return CriticalValues(None, None, 0.0)
    return CriticalValues(c, n - c, size)


def run_sign_test(
    n: int,
    x: int,
    alpha: float = 0.05,
    sidedness: Sidedness = "two",
    ties: int = 0,
) -> SignTestReport:
    """Assemble p-values, critical values and a decision.

    For a two-sided test ``alpha`` is split evenly over the two rejection
    regions; for a one-sided test each region is held at ``alpha``. Ties are
    dropped from ``n`` before testing.
    """
    if sidedness not in ("one", "two"):
        raise DomainError(f"sidedness={sidedness!r} must be 'one' or 'two'")
    if isinstance(ties, bool) or int(ties) != ties or ties < 0:
        raise DomainError(f"ties={ties!r} must be a nonnegative integer")
    _check_n(n)
    n_eff = n - ties
    if n_eff < 1:
        raise DomainError(f"no studies left after excluding {ties} ties from n={n}")
    _check_count(x, n_eff)

    level = alpha / 2.0 if sidedness == "two" else alpha
    crit = critical_values(n_eff, level)
    if crit.degenerate:
        decision = FAIL_TO_REJECT
    elif x >= crit.c_plus:
        decision = REJECT_PLUS
    elif x <= crit.c_minus:
        decision = REJECT_MINUS
    else:
        decision = FAIL_TO_REJECT
    return SignTestReport(
        n=n_eff,
        x=x,
        p_plus=p_value_one_sided(n_eff, x, "plus"),
        p_minus=p_value_one_sided(n_eff, x, "minus"),
        p_two_sided=p_value_two_sided(n_eff, x),
        alpha=alpha,
        sidedness=sidedness,
        c_minus=crit.c_minus,
        c_plus=crit.c_plus,
        exact_size=crit.exact_size,
        decision=decision,
        degenerate=crit.degenerate,
        ties_excluded=ties,
    )
