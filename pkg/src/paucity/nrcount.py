"""Counting distinct tau-value tuples N_r(X; y) over completions of a fixed prefix."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import comb

from .counting import BudgetExceeded
from .exponents import theta
from .symfunc import elementary_symmetric, tau_eval

NR_BUDGET = 10**8


@dataclass(frozen=True)
class NrInstance:
    k: int
    d: int
    r: int
    y_fixed: tuple[int, ...]
    X: int
    require_distinct: bool = True

    def __post_init__(self):
        object.__setattr__(self, "y_fixed", tuple(int(v) for v in self.y_fixed))
        if not 0 <= self.d < self.k / 2:
            raise ValueError(f"need 0 <= d < k/2, got k={self.k}, d={self.d}")
        if not 1 <= self.r <= self.k:
            raise ValueError(f"need 1 <= r <= k, got r={self.r}")
        if len(self.y_fixed) != self.r:
            raise ValueError(f"y_fixed has {len(self.y_fixed)} entries, expected r={self.r}")
        if any(not 1 <= v <= self.X for v in self.y_fixed):
            raise ValueError(f"y_fixed entries must lie in [1, {self.X}]")
        if self.require_distinct and len(set(self.y_fixed)) != self.r:
            raise ValueError("y_fixed entries must be distinct")


def nr_count(inst: NrInstance, budget: int = NR_BUDGET) -> int:
    """Number of distinct (tau_d(y; y_1), ..., tau_d(y; y_r)) over y_{r+1..k} in [1,X].

    tau_d(y; .) depends on y only through sigma_1..sigma_d, which are
    symmetric, so completions are enumerated as multisets.
    """
    free = inst.k - inst.r
    work = inst.X**free
    if work > budget:
        raise BudgetExceeded("N_r completions", work, budget)
    if inst.d == 0:
        return 1
    seen = set()
    for tail in combinations_with_replacement(range(1, inst.X + 1), free):
        sig = elementary_symmetric(inst.y_fixed + tail, inst.d)
        seen.add(tuple(tau_eval(sig, inst.d, yj) for yj in inst.y_fixed))
    return len(seen)


def nr_bound_exponent(k: int, d: int, r: int) -> int:
    """min(rd, d(d+1)/2, theta_{d,r}); the last is never larger than the others."""
    return min(r * d, d * (d + 1) // 2, theta(d, r))


def nr_ratio(inst: NrInstance) -> Fraction:
    """Observed N_r / X^theta, reported in place of the unspecified constant."""
    return Fraction(nr_count(inst), inst.X ** theta(inst.d, inst.r))


def completions_count(inst: NrInstance) -> int:
    """Number of multiset completions enumerated by :func:`nr_count`."""
    free = inst.k - inst.r
    return comb(inst.X + free - 1, free)
