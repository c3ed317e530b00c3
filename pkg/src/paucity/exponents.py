"""Exact-rational exponent formulas and the corollary bound checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def theta(d: int, r: int) -> int:
    """theta_{d,r} = sum_{l=1}^{r} max(d - l + 1, 0)."""
    if d < 0 or r < 0:
        raise ValueError("theta needs d, r >= 0")
    return sum(max(d - l + 1, 0) for l in range(1, r + 1))


def psi(k: int, r: int) -> int:
    """psi_r(k) = sum_{i=1}^{k-1} i^(r-1)."""
    return sum(i ** (r - 1) for i in range(1, k))


def omega(k: int, r: int) -> Fraction:
    """omega(k, r) = k^(1-r) * psi_r(k)."""
    if k < 2 or r < 2:
        raise ValueError("omega needs k, r >= 2")
    return Fraction(psi(k, r), k ** (r - 1))


def _argmin(values: dict[int, Fraction]) -> tuple[Fraction, int]:
    best_r = min(values, key=lambda r: (values[r], r))
    return values[best_r], best_r


def _check_kd(k: int, d: int):
    if k < 3:
        raise ValueError(f"exponent formulas need k >= 3, got {k}")
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")


def gamma(k: int, d: int) -> tuple[Fraction, int]:
    """min over 2 <= r <= k of r + k/r + theta_{d,r}; ties go to smaller r."""
    _check_kd(k, d)
    return _argmin({r: r + Fraction(k, r) + theta(d, r) for r in range(2, k + 1)})


def gamma_refined(k: int, d: int) -> tuple[Fraction, int]:
    """min over 2 <= r <= k of r + omega(k, r) + theta_{d,r}."""
    _check_kd(k, d)
    return _argmin({r: r + omega(k, r) + theta(d, r) for r in range(2, k + 1)})


def assembled_exponent(k: int, d: int, r: int) -> Fraction:
    """Exponent of the two-term bound X^(r-1) + X^(r + theta) * X^(k/r) for one r."""
    return max(Fraction(r - 1), r + theta(d, r) + Fraction(k, r))


def _le_sqrt(a: Fraction, n: Fraction) -> bool:
    """a <= sqrt(n) for n >= 0, decided by squaring."""
    return a < 0 or a * a <= n


def fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass
class ExponentReport:
    k: int
    d: int
    gamma: Fraction
    argmin_r: int
    gamma_refined: Fraction
    argmin_r_refined: int
    theta_table: list[int]
    omega_table: list[Fraction]
    corollary_bounds: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "d": self.d,
            "gamma": fmt(self.gamma),
            "argmin_r": self.argmin_r,
            "gamma_refined": fmt(self.gamma_refined),
            "argmin_r_refined": self.argmin_r_refined,
            "theta_table": self.theta_table,
            "omega_table": [fmt(w) for w in self.omega_table],
            "corollary_bounds": self.corollary_bounds,
        }


def bound_report(k: int, d: int) -> dict:
    """Check each corollary inequality where its hypotheses apply.

    Every entry carries ``applies`` and, when it applies, ``holds``. Square
    roots are never evaluated; inequalities are compared after squaring.
    """
    _check_kd(k, d)
    if not d < k / 2:
        raise ValueError(f"need d < k/2, got k={k}, d={d}")
    g, _ = gamma(k, d)
    gp, _ = gamma_refined(k, d)
    half_below_k = Fraction(2 * k - 1, 2)
    tri = Fraction(d * (d + 1), 2)
    out = {}

    applies = d * d <= k
    out["sqrt_4k_plus_1"] = {
        "applies": applies,
        "bound": f"sqrt({4 * k + 1}) + {fmt(tri)}",
        "holds": _le_sqrt(g - tri, Fraction(4 * k + 1)) if applies else None,
    }
    applies = d >= 1 and k >= 4 * d + 3
    out["k_minus_half"] = {
        "applies": applies,
        "bound": fmt(half_below_k),
        "holds": g <= half_below_k if applies else None,
    }
    applies = d >= 1 and k >= 4 * d + 2
    out["k_minus_half_refined"] = {
        "applies": applies,
        "bound": fmt(half_below_k),
        "holds": gp <= half_below_k if applies else None,
    }
    applies = 1 <= d and 4 * d <= k
    n = 4 * k * (d + 1) + (d + 1) ** 2
    out["sqrt_4k_d_plus_1"] = {
        "applies": applies,
        "bound": f"sqrt({n})",
        "holds": _le_sqrt(g, Fraction(n)) if applies else None,
    }
    return out


def exponent_report(k: int, d: int) -> ExponentReport:
    g, r = gamma(k, d)
    gp, rp = gamma_refined(k, d)
    bounds = bound_report(k, d) if d < k / 2 else {}
    return ExponentReport(
        k, d, g, r, gp, rp,
        theta_table=[theta(d, r) for r in range(1, k + 1)],
        omega_table=[omega(k, r) for r in range(2, k + 1)],
        corollary_bounds=bounds,
    )
