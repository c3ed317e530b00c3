"""Exact solution counts for complete and incomplete Vinogradov systems.

Two routes are provided and kept independent: ``count_naive`` compares every
pair of ordered tuples, while ``count_fast`` builds a histogram of power-sum
signatures over multisets (weighted by their number of orderings) and returns
the sum of squared bucket weights.
"""

from __future__ import annotations

import json
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from math import comb, factorial, perm, prod
from typing import Iterable, Iterator

from .symfunc import Witness

NAIVE_PAIR_BUDGET = 10**9
DEFAULT_MAX_KEYS = 20_000_000


class BudgetExceeded(RuntimeError):
    """Raised instead of silently truncating an enumeration."""

    def __init__(self, what: str, attempted: int, budget: int):
        super().__init__(f"{what}: {attempted} exceeds budget {budget}")
        self.attempted = attempted
        self.budget = budget


@dataclass(frozen=True)
class SystemSpec:
    k: int
    exponents: tuple[int, ...]
    label: str

    @classmethod
    def incomplete(cls, k: int, d: int) -> "SystemSpec":
        if k < 1 or not 0 <= d < k:
            raise ValueError(f"incomplete system needs k >= 1 and 0 <= d < k, got k={k}, d={d}")
        exps = tuple(j for j in range(1, k + 1) if j != k - d)
        return cls(k, exps, f"incomplete({k},{d})")

    @classmethod
    def full(cls, s: int, k: int) -> "SystemSpec":
        if s < 1 or k < 1:
            raise ValueError("full system needs s, k >= 1")
        return cls(s, tuple(range(1, k + 1)), f"full({s},{k})")

    def signature(self, z: Iterable[int]) -> tuple[int, ...]:
        z = tuple(z)
        return tuple(sum(v**j for v in z) for j in self.exponents)


@dataclass
class CountReport:
    I: int
    T: int
    X: int
    spec: SystemSpec
    elapsed: float = 0.0

    @property
    def diff(self) -> int:
        return self.I - self.T

    def to_dict(self, timing: bool = False) -> dict:
        out = {
            "system": self.spec.label,
            "X": self.X,
            "I": str(self.I),
            "T": str(self.T),
            "diff": str(self.diff),
        }
        if timing:
            out["elapsed_ms"] = int(round(self.elapsed * 1000))
        return out


def orderings(ms: tuple[int, ...]) -> int:
    """Number of distinct orderings of a multiset given as a sorted tuple."""
    return factorial(len(ms)) // prod(factorial(c) for c in Counter(ms).values())


def _int_partitions(n: int, largest: int | None = None) -> Iterator[list[int]]:
    if largest is None:
        largest = n
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _int_partitions(n - part, part):
            yield [part] + rest


def count_T(s: int, X: int) -> int:
    """Number of pairs (x, y) in [1,X]^s x [1,X]^s with y a permutation of x.

    Sums orderings(m)^2 over multisets m, grouped by multiplicity pattern so
    the cost depends on s only.
    """
    if s < 1 or X < 1:
        raise ValueError("count_T needs s >= 1 and X >= 1")
    total = 0
    fs = factorial(s)
    for lam in _int_partitions(s):
        parts = len(lam)
        if parts > X:
            continue
        # multisets whose multiplicities form lam: choose distinct values,
        # divided by permutations among equal multiplicities
        n_ms = perm(X, parts) // prod(factorial(c) for c in Counter(lam).values())
        w = fs // prod(factorial(p) for p in lam)
        total += n_ms * w * w
    return total


def count_naive(spec: SystemSpec, X: int, budget: int = NAIVE_PAIR_BUDGET) -> int:
    """Brute-force count over all pairs of ordered tuples."""
    if X < 1:
        raise ValueError("X must be >= 1")
    pairs = X ** (2 * spec.k)
    if pairs > budget:
        raise BudgetExceeded("naive pair count", pairs, budget)
    sigs = [spec.signature(t) for t in product(range(1, X + 1), repeat=spec.k)]
    return sum(1 for a in sigs for b in sigs if a == b)


def count_T_naive(s: int, X: int, budget: int = NAIVE_PAIR_BUDGET) -> int:
    """Brute-force count of permutation pairs, for checking :func:`count_T`."""
    pairs = X ** (2 * s)
    if pairs > budget:
        raise BudgetExceeded("naive pair count", pairs, budget)
    keys = [tuple(sorted(t)) for t in product(range(1, X + 1), repeat=s)]
    return sum(1 for a in keys for b in keys if a == b)


# --- signature histogram ----------------------------------------------------

def _multisets(k: int, X: int, first: int | None = None) -> Iterator[tuple[int, ...]]:
    if first is None:
        yield from combinations_with_replacement(range(1, X + 1), k)
        return
    for rest in combinations_with_replacement(range(first, X + 1), k - 1):
        yield (first,) + rest


def _histogram_shard(args) -> dict:
    spec, X, first, max_keys = args
    hist: dict = defaultdict(int)
    for ms in _multisets(spec.k, X, first):
        hist[spec.signature(ms)] += orderings(ms)
        if len(hist) > max_keys:
            raise BudgetExceeded("signature map size", len(hist), max_keys)
    return dict(hist)


def signature_histogram(
    spec: SystemSpec, X: int, threads: int = 1, max_keys: int = DEFAULT_MAX_KEYS
) -> dict[tuple[int, ...], int]:
    """Map signature -> number of ordered k-tuples in [1,X]^k realising it.

    With threads > 1 the multiset stream is sharded by smallest element and
    shard maps are merged in sorted key order.
    """
    if X < 1:
        raise ValueError("X must be >= 1")
    if threads <= 1 or X == 1 or spec.k == 1:
        hist = _histogram_shard((spec, X, None, max_keys))
    else:
        jobs = [(spec, X, first, max_keys) for first in range(1, X + 1)]
        merged: dict = defaultdict(int)
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for shard in pool.map(_histogram_shard, jobs):
                for key in sorted(shard):
                    merged[key] += shard[key]
                if len(merged) > max_keys:
                    raise BudgetExceeded("signature map size", len(merged), max_keys)
        hist = dict(merged)
    return {key: hist[key] for key in sorted(hist)}


def count_fast(
    spec: SystemSpec, X: int, threads: int = 1, max_keys: int = DEFAULT_MAX_KEYS
) -> CountReport:
    start = time.perf_counter()
    hist = signature_histogram(spec, X, threads=threads, max_keys=max_keys)
    total = sum(c * c for c in hist.values())
    elapsed = time.perf_counter() - start
    return CountReport(total, count_T(spec.k, X), X, spec, elapsed)


def signature_buckets(spec: SystemSpec, X: int) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Signature -> sorted multisets sharing it, for signatures with >= 2 multisets."""
    buckets: dict = defaultdict(list)
    for ms in _multisets(spec.k, X):
        buckets[spec.signature(ms)].append(ms)
    return {key: v for key, v in buckets.items() if len(v) > 1}


# --- witnesses ----------------------------------------------------------------

def nondiagonal_witnesses(k: int, d: int, X: int, limit: int) -> list[Witness]:
    """Non-diagonal solutions, one per ordered pair of distinct multisets.

    Tuples are reported sorted and results are ordered lexicographically by
    (x, y). The omitted degree's discrepancy h = s_{k-d}(x) - s_{k-d}(y).
    """
    if limit <= 0:
        return []
    spec = SystemSpec.incomplete(k, d)
    found = []
    for group in signature_buckets(spec, X).values():
        for a in group:
            for b in group:
                if a != b:
                    found.append((a, b))
    found.sort()
    j = k - d
    out = []
    for a, b in found[:limit]:
        h = sum(v**j for v in a) - sum(v**j for v in b)
        out.append(Witness(a, b, h, k, d))
    return out


def witness_to_json(w: Witness) -> str:
    return json.dumps({"k": w.k, "d": w.d, "x": list(w.x), "y": list(w.y), "h": str(w.h)})


def witness_from_json(line: str) -> Witness:
    obj = json.loads(line)
    return Witness(tuple(obj["x"]), tuple(obj["y"]), int(obj["h"]), int(obj["k"]), int(obj["d"]))


# --- V-split ------------------------------------------------------------------

def v_split(k: int, d: int, X: int, r: int) -> tuple[int, int]:
    """Split I - T into (V1, V2) by the number of distinct values.

    V1 counts non-diagonal solutions where both x and y take fewer than r
    distinct values; V2 counts the remaining non-diagonal ones. Works on the
    signature buckets, weighting each multiset pair by its orderings.
    """
    if not 1 < r <= k:
        raise ValueError(f"need 1 < r <= k, got r={r}")
    spec = SystemSpec.incomplete(k, d)
    v1 = v2 = 0
    for group in signature_buckets(spec, X).values():
        info = [(orderings(ms), len(set(ms)) < r) for ms in group]
        for ia, (wa, sa) in enumerate(info):
            for ib, (wb, sb) in enumerate(info):
                if ia == ib:
                    continue
                if sa and sb:
                    v1 += wa * wb
                else:
                    v2 += wa * wb
    return v1, v2


def v_split_naive(k: int, d: int, X: int, r: int, budget: int = NAIVE_PAIR_BUDGET) -> tuple[int, int]:
    """Brute-force version of :func:`v_split` over ordered pairs."""
    if not 1 < r <= k:
        raise ValueError(f"need 1 < r <= k, got r={r}")
    pairs = X ** (2 * k)
    if pairs > budget:
        raise BudgetExceeded("naive pair count", pairs, budget)
    spec = SystemSpec.incomplete(k, d)
    tuples = [(t, spec.signature(t), tuple(sorted(t)), len(set(t))) for t in product(range(1, X + 1), repeat=k)]
    v1 = v2 = 0
    for x, sx, mx, nx in tuples:
        for y, sy, my, ny in tuples:
            if sx != sy or mx == my:
                continue
            if nx < r and ny < r:
                v1 += 1
            else:
                v2 += 1
    return v1, v2


def shared_value_solutions(k: int, d: int, X: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Non-diagonal solutions in which some x_l equals some y_m.

    The permutation theorem for k-1 equations in k-1 pairs predicts this list
    is always empty.
    """
    spec = SystemSpec.incomplete(k, d)
    bad = []
    for group in signature_buckets(spec, X).values():
        for a in group:
            for b in group:
                if a < b and set(a) & set(b):
                    bad.append((a, b))
    return bad
