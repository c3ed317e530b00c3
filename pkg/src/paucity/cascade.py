"""Index algebra on [0,k]^r and the gcd cascade for product-balanced matrices.

A ProductMatrix u has k+1 rows and r columns; every column has the same
product. The cascade walks the index vectors i in phi-order and extracts
alpha_i = gcd over m of u[i_m][m] / beta_i^(m), where beta_i^(m) multiplies
the alpha_j already extracted with j_m = i_m. The alphas then rebuild each
|u[l][m]| as the product of alpha_j over j_m = l.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product as iproduct
from math import gcd, prod
from typing import Sequence

from .exponents import psi
from .symfunc import Witness, elementary_symmetric, tau_eval


class CascadeError(ArithmeticError):
    """A division in the cascade was not exact."""

    def __init__(self, index, column, numerator, divisor):
        rem = numerator % divisor
        super().__init__(
            f"inexact division at index {index}, column {column + 1}: "
            f"{numerator} / {divisor} leaves remainder {rem}"
        )
        self.index = index
        self.column = column
        self.remainder = rem


# --- phi-order ----------------------------------------------------------------

def phi(i: Sequence[int], k: int) -> int:
    """Base-(k+1) encoding with the first coordinate least significant."""
    if any(not 0 <= c <= k for c in i):
        raise ValueError(f"index {tuple(i)} has a coordinate outside [0, {k}]")
    return sum(c * (k + 1) ** m for m, c in enumerate(i))


def phi_inv(n: int, k: int, r: int) -> tuple[int, ...]:
    if not 0 <= n < (k + 1) ** r:
        raise ValueError(f"{n} outside [0, {(k + 1) ** r})")
    out = []
    for _ in range(r):
        n, c = divmod(n, k + 1)
        out.append(c)
    return tuple(out)


def successor(i: Sequence[int], k: int) -> tuple[int, ...]:
    n = phi(i, k) + 1
    if n >= (k + 1) ** len(i):
        raise StopIteration(f"{tuple(i)} is the last index")
    return phi_inv(n, k, len(i))


def indices(k: int, r: int):
    """All of [0,k]^r in phi-order."""
    for n in range((k + 1) ** r):
        yield phi_inv(n, k, r)


# --- matrices -----------------------------------------------------------------

@dataclass
class ProductMatrix:
    u: list[list[int]]
    X: int

    @property
    def k(self) -> int:
        return len(self.u) - 1

    @property
    def r(self) -> int:
        return len(self.u[0])

    def violations(self) -> list[str]:
        out = []
        if len({len(row) for row in self.u}) != 1:
            out.append("ragged rows")
            return out
        for l, row in enumerate(self.u):
            for m, v in enumerate(row):
                if v == 0:
                    out.append(f"u[{l}][{m + 1}] is zero")
                elif l >= 1 and abs(v) > self.X:
                    out.append(f"|u[{l}][{m + 1}]| = {abs(v)} exceeds X = {self.X}")
        col_products = {prod(self.u[l][m] for l in range(self.k + 1)) for m in range(self.r)}
        if len(col_products) > 1:
            out.append("column products differ")
        return out

    def to_json(self) -> str:
        return json.dumps({"u": [[str(v) for v in row] for row in self.u], "X": self.X})

    @classmethod
    def from_dict(cls, obj: dict) -> "ProductMatrix":
        return cls([[int(v) for v in row] for row in obj["u"]], int(obj["X"]))


@dataclass
class DecompTable:
    k: int
    r: int
    alpha: dict[tuple[int, ...], int]
    signs: list[list[int]]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "r": self.r,
            "alpha": [{"i": list(i), "v": str(self.alpha[i])} for i in indices(self.k, self.r)],
            "signs": self.signs,
        }

    @classmethod
    def from_dict(cls, obj: dict) -> "DecompTable":
        alpha = {tuple(e["i"]): int(e["v"]) for e in obj["alpha"]}
        return cls(int(obj["k"]), int(obj["r"]), alpha, [list(row) for row in obj["signs"]])


def cascade_extract(m: ProductMatrix) -> DecompTable:
    problems = [p for p in m.violations() if "zero" in p or "ragged" in p]
    if problems:
        raise ValueError("; ".join(problems))
    k, r = m.k, m.r
    absu = [[abs(v) for v in row] for row in m.u]
    # running[col][l] = product of alpha_j seen so far with j_col = l
    running = [[1] * (k + 1) for _ in range(r)]
    alpha: dict[tuple[int, ...], int] = {}
    for i in indices(k, r):
        quotients = []
        for col, l in enumerate(i):
            num, beta = absu[l][col], running[col][l]
            if num % beta:
                raise CascadeError(i, col, num, beta)
            quotients.append(num // beta)
        a = 0
        for q in quotients:
            a = gcd(a, q)
        alpha[i] = a
        for col, l in enumerate(i):
            running[col][l] *= a
    signs = [[1 if v > 0 else -1 for v in row] for row in m.u]
    return DecompTable(k, r, alpha, signs)


def b_products(table: DecompTable) -> list[int]:
    """B_p = product of alpha_i over i > 0 coordinatewise with i_p the strict minimum."""
    out = []
    for p in range(table.r):
        acc = 1
        for i, a in table.alpha.items():
            if min(i) > 0 and all(i[l] > i[p] for l in range(table.r) if l != p):
                acc *= a
        out.append(acc)
    return out


@dataclass
class ReconstructionReport:
    ok: bool
    mismatches: list[str] = field(default_factory=list)
    B: list[int] = field(default_factory=list)
    pigeonhole: bool = False
    product_chain: bool = False


def reconstruct_verify(table: DecompTable, m: ProductMatrix) -> ReconstructionReport:
    k, r = table.k, table.r
    mismatches = []
    for l in range(k + 1):
        for col in range(r):
            rebuilt = prod(a for i, a in table.alpha.items() if i[col] == l)
            u = m.u[l][col]
            if rebuilt != abs(u) or table.signs[l][col] * rebuilt != u:
                mismatches.append(f"u[{l}][{col + 1}] = {u}, rebuilt {table.signs[l][col]}*{rebuilt}")
    B = b_products(table)
    # prod_p B_p <= prod over positive indices <= prod_{l>=1} |u[l][1]| <= X^k
    plus = prod(a for i, a in table.alpha.items() if min(i) > 0)
    col1 = prod(abs(m.u[l][0]) for l in range(1, k + 1))
    chain = prod(B) <= plus <= col1 <= m.X**k
    pigeon = min(B) ** r <= m.X**k
    return ReconstructionReport(not mismatches, mismatches, B, pigeon, chain)


def matrix_from_alpha(alpha: dict[tuple[int, ...], int], k: int, r: int,
                      signs: list[list[int]] | None = None) -> ProductMatrix:
    """Build u[l][m] = sign * prod of alpha_j over j_m = l; X is the largest |u[l][m]|, l >= 1."""
    u = [[prod(a for i, a in alpha.items() if i[col] == l) for col in range(r)] for l in range(k + 1)]
    if signs is not None:
        u = [[s * v for s, v in zip(srow, row)] for srow, row in zip(signs, u)]
    X = max((abs(v) for row in u[1:] for v in row), default=1)
    return ProductMatrix(u, X)


def matrix_from_witness(w: Witness, r: int, X: int | None = None) -> ProductMatrix:
    """u_{ij} = x_i - y_j and u_{0j} = prod_{t != j} tau_d(x; y_t), over r distinct y values.

    The first r distinct entries of y (in order of appearance) are used.
    """
    ys = list(dict.fromkeys(w.y))
    if len(ys) < r:
        raise ValueError(f"witness has only {len(ys)} distinct y values, need r={r}")
    ys = ys[:r]
    sig = elementary_symmetric(w.x, w.d)
    taus = [tau_eval(sig, w.d, yj) for yj in ys]
    top = [prod(taus[t] for t in range(r) if t != j) for j in range(r)]
    rows = [[xi - yj for yj in ys] for xi in w.x]
    if X is None:
        X = max(w.x + w.y)
    return ProductMatrix([top] + rows, X)


def index_set_cardinalities(k: int, r: int) -> tuple[int, int, int]:
    """Enumerated sizes of the all-positive index set and of its subset with a
    strict minimum coordinate, checked against k^r and r * psi_r(k)."""
    if k < 2 or r < 2:
        raise ValueError("need k, r >= 2")
    plus = star = 0
    for i in iproduct(range(1, k + 1), repeat=r):
        plus += 1
        lo = min(i)
        if i.count(lo) == 1:
            star += 1
    p = psi(k, r)
    if plus != k**r or star != r * p:
        raise AssertionError(f"cardinality mismatch at k={k}, r={r}: {plus}, {star}")
    return plus, star, p
