"""Exact symmetric-function machinery over the integers.

Power sums, elementary symmetric polynomials (both from a product expansion
and from power sums alone), the auxiliary polynomial tau_d, verification of
the multiplicative relations satisfied by non-diagonal solutions, and the
divided-difference step used to bound the number of tau-value tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, prod
from typing import Sequence


def _check_tuple(z: Sequence[int]) -> tuple[int, ...]:
    z = tuple(int(v) for v in z)
    if not z:
        raise ValueError("empty tuple")
    if min(z) < 1:
        raise ValueError(f"tuple entries must be positive, got {z}")
    return z


def power_sums(z: Sequence[int], jmax: int) -> list[int]:
    """Return [s_1(z), ..., s_jmax(z)] where s_j(z) = sum of z_i**j."""
    z = _check_tuple(z)
    if jmax < 1:
        raise ValueError("jmax must be >= 1")
    return [sum(v**j for v in z) for j in range(1, jmax + 1)]


def elementary_symmetric(z: Sequence[int], n: int | None = None) -> list[int]:
    """sigma_0..sigma_n of z, read off from the expansion of prod(1 + z_i t)."""
    z = _check_tuple(z)
    if n is None:
        n = len(z)
    if n < 0 or n > len(z):
        raise ValueError(f"n={n} outside [0, {len(z)}]")
    coeffs = [1]
    for v in z:
        nxt = coeffs + [0]
        for m in range(1, len(nxt)):
            nxt[m] += v * coeffs[m - 1]
        coeffs = nxt
    return coeffs[: n + 1]


def _partitions_by_multiplicity(n: int):
    """Yield multiplicity vectors m (m[i-1] = m_i) with sum i*m_i = n."""

    def rec(i, remaining):
        if i == 0:
            if remaining == 0:
                yield []
            return
        for mi in range(remaining // i + 1):
            for rest in rec(i - 1, remaining - i * mi):
                yield rest + [mi]

    yield from rec(n, n)


@dataclass
class SigmaTable:
    """sigma_0..sigma_n recovered from power sums.

    ``integral`` is False when some value failed to cancel to an integer, in
    which case the power sums cannot come from an integer tuple and
    ``entries`` holds the raw rationals.
    """

    entries: list
    integral: bool = True
    bad_indices: list[int] = field(default_factory=list)

    def __getitem__(self, m):
        return self.entries[m]

    def __len__(self):
        return len(self.entries)


def sigma_from_power_sums(s: Sequence[int], n: int) -> SigmaTable:
    """Elementary symmetric values from power sums via the partition sum.

    sigma_n = (-1)^n sum over m_1 + 2 m_2 + ... + n m_n = n of
    prod_i (-s_i)^{m_i} / (i^{m_i} m_i!), accumulated as exact rationals.
    """
    if n < 0 or len(s) < n:
        raise ValueError(f"need at least {n} power sums, got {len(s)}")
    out: list = [1]
    bad = []
    for order in range(1, n + 1):
        total = Fraction(0)
        for mult in _partitions_by_multiplicity(order):
            num = 1
            den = 1
            for i, mi in enumerate(mult, start=1):
                if mi:
                    num *= (-s[i - 1]) ** mi
                    den *= i**mi * factorial(mi)
            total += Fraction(num, den)
        total *= (-1) ** order
        if total.denominator == 1:
            out.append(int(total))
        else:
            out.append(total)
            bad.append(order)
    return SigmaTable(out, integral=not bad, bad_indices=bad)


def sigma_newton(s: Sequence[int], n: int) -> SigmaTable:
    """Same result as :func:`sigma_from_power_sums` via Newton's recurrence.

    m * sigma_m = sum_{i=1}^{m} (-1)^(i-1) sigma_{m-i} s_i
    """
    if n < 0 or len(s) < n:
        raise ValueError(f"need at least {n} power sums, got {len(s)}")
    sig: list = [Fraction(1)]
    for m in range(1, n + 1):
        acc = sum((-1) ** (i - 1) * sig[m - i] * s[i - 1] for i in range(1, m + 1))
        sig.append(Fraction(acc) / m)
    bad = [m for m, v in enumerate(sig) if v.denominator != 1]
    entries = [int(v) if v.denominator == 1 else v for v in sig]
    return SigmaTable(entries, integral=not bad, bad_indices=bad)


def tau_eval(sigma: Sequence[int], d: int, w: int) -> int:
    """tau_d(y; w) = (-1)^(d-1) * sum_{m=0}^{d} sigma_m(y) (-w)^(d-m)."""
    if d < 0:
        raise ValueError("d must be >= 0")
    if len(sigma) < d + 1:
        raise ValueError(f"sigma table needs entries through sigma_{d}")
    total = sum(sigma[m] * (-w) ** (d - m) for m in range(d + 1))
    return -total if d % 2 == 0 else total


# --- polynomials as coefficient lists, lowest degree first -----------------

def _poly_from_roots(roots: Sequence[int]) -> list[int]:
    """Coefficients of prod (t - r)."""
    coeffs = [1]
    for r in roots:
        nxt = [0] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            nxt[i + 1] += c
            nxt[i] -= r * c
        coeffs = nxt
    return coeffs


def _trim(p: list[int]) -> list[int]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


# --- witnesses -------------------------------------------------------------

@dataclass(frozen=True)
class Witness:
    """A solution (x, y, h) of the incomplete system with degree k-d shifted by h."""

    x: tuple[int, ...]
    y: tuple[int, ...]
    h: int
    k: int
    d: int

    def __post_init__(self):
        object.__setattr__(self, "x", _check_tuple(self.x))
        object.__setattr__(self, "y", _check_tuple(self.y))
        object.__setattr__(self, "h", int(self.h))

    @property
    def diagonal(self) -> bool:
        return sorted(self.x) == sorted(self.y)

    def system_violations(self) -> list[str]:
        """Type-invariant failures; an empty list means the system holds."""
        k, d = self.k, self.d
        problems = []
        if len(self.x) != k or len(self.y) != k:
            problems.append(f"tuple lengths {len(self.x)},{len(self.y)} != k={k}")
            return problems
        if not 0 <= d < k / 2:
            problems.append(f"d={d} outside 0 <= d < k/2")
        sx, sy = power_sums(self.x, k), power_sums(self.y, k)
        for j in range(1, k + 1):
            if j == k - d:
                if sx[j - 1] != sy[j - 1] + self.h:
                    problems.append(f"s_{j}(x) != s_{j}(y) + h")
            elif sx[j - 1] != sy[j - 1]:
                problems.append(f"s_{j}(x) != s_{j}(y)")
        return problems


def tau_magnitude_cap(k: int, d: int, X: int) -> int:
    """Term-wise bound X^d * sum_{m<=d} C(k, m) on |tau_d(y; w)| for 1 <= y, w <= X."""
    return X**d * sum(comb(k, m) for m in range(d + 1))


def tau_magnitude_cap_narrow(k: int, d: int, X: int) -> int:
    """(d+1) * C(k, floor(d/2)) * X^d: tighter but not a valid bound once d >= 1."""
    return (d + 1) * comb(k, d // 2) * X**d


@dataclass
class VerificationReport:
    status: str  # "ok", "failed", "diagonal" or "invalid"
    relations: dict[str, bool] = field(default_factory=dict)
    details: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.status == "ok"


def verify_witness(wit: Witness, X: int | None = None) -> VerificationReport:
    """Check every multiplicative relation implied for a non-diagonal solution.

    X defaults to the largest entry of x and y; it only enters the tau
    magnitude check.
    """
    problems = wit.system_violations()
    if problems:
        return VerificationReport("invalid", details=problems)
    if wit.diagonal:
        return VerificationReport("diagonal", details=["x is a permutation of y"])

    k, d, h = wit.k, wit.d, wit.h
    x, y = wit.x, wit.y
    if X is None:
        X = max(x + y)
    sig_x = elementary_symmetric(x)
    sig_y = elementary_symmetric(y)
    rel: dict[str, bool] = {}
    details: list[str] = []

    # (2.3): agreement of the low elementary symmetric values
    rel["sigma_agree"] = all(sig_x[n] == sig_y[n] for n in range(1, k - d))

    # (2.5): (k-d)(prod(t-x_i) - prod(t-y_i)) == (-1)^(d-1) h sum sigma_m(y) (-t)^(d-m)
    lhs = [(k - d) * (a - b) for a, b in zip(_poly_from_roots(x), _poly_from_roots(y))]
    rhs = [0] * (k + 1)
    sign = -1 if d % 2 == 0 else 1
    for m in range(d + 1):
        e = d - m
        rhs[e] += sign * h * sig_y[m] * (-1) ** e
    rel["poly_identity"] = _trim(lhs) == _trim(rhs)

    tau_y = [tau_eval(sig_y, d, yj) for yj in y]
    tau_x = [tau_eval(sig_x, d, yj) for yj in y]
    diffs = [prod(yj - xi for xi in x) for yj in y]

    rel["tau_relation"] = all((k - d) * diffs[j] == tau_y[j] * h for j in range(k))
    rel["tau_symmetric"] = tau_y == tau_x
    rel["cross_products"] = all(
        tau_x[t] * diffs[s] == tau_x[s] * diffs[t]
        for s in range(k)
        for t in range(s + 1, k)
    )
    rel["nonvanishing"] = h != 0 and all(v != 0 for v in tau_x)
    cap = tau_magnitude_cap(k, d, X)
    rel["tau_magnitude"] = all(1 <= abs(v) <= cap for v in tau_y)
    top = max(abs(v) for v in tau_y)
    if not rel["tau_magnitude"]:
        details.append(f"max |tau| = {top}, cap = {cap}")
    narrow = tau_magnitude_cap_narrow(k, d, X)
    if top > narrow:
        # report only
        details.append(f"max |tau| = {top} exceeds narrow cap {narrow}")

    for name, ok in rel.items():
        if not ok:
            details.append(f"{name} failed")
    status = "ok" if all(rel.values()) else "failed"
    return VerificationReport(status, rel, details)


# --- divided differences ---------------------------------------------------

@dataclass(frozen=True)
class BoundedPoly:
    """f(t) = a_0 + a_1 t + ... + a_D t^D with |a_l| <= cap * scale^(D-l)."""

    coeffs: tuple[int, ...]
    scale: int
    cap: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        object.__setattr__(self, "cap", Fraction(self.cap))
        if not self.coeffs:
            raise ValueError("polynomial needs at least one coefficient")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t: int) -> int:
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * t + a
        return acc

    def within_cap(self) -> bool:
        D = self.degree
        return all(
            abs(a) <= self.cap * self.scale ** (D - l) for l, a in enumerate(self.coeffs)
        )


def divided_difference_reduce(f: BoundedPoly, y_r: int) -> BoundedPoly:
    """Return F with F(t) = (f(y_r) - f(t)) / (y_r - t), of degree one less.

    b_l = sum_{j > l} a_j y_r^(j-l-1); the cap grows by a factor of deg f.
    """
    D = f.degree
    if D < 1:
        raise ValueError("divided difference of a constant polynomial")
    if not 1 <= y_r <= f.scale:
        raise ValueError(f"y_r={y_r} outside [1, {f.scale}]")
    a = f.coeffs
    b = [0] * D
    # Horner-style: b_{D-1} = a_D, b_{l} = a_{l+1} + y_r b_{l+1}
    acc = 0
    for l in range(D - 1, -1, -1):
        acc = a[l + 1] + y_r * acc
        b[l] = acc
    return BoundedPoly(tuple(b), f.scale, f.cap * D)
