"""Zero statistics, distribution bounds, and mollifier coefficients.

Aggregates a located zero list into counts N(T), N(sigma, T), excess sums
over vertical lines, and the average abscissa, pairing each with the
matching theoretical bound.  Multiplicities always count.  The mollifier
layer is exact integer arithmetic: a(n) = sum of mu(d) over divisors d of n
with d <= Y and n/d <= X, the coefficient sequence of the mollified sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .zeros import ZeroRecord

__all__ = [
    "MollifierCoeffs",
    "StatReport",
    "StatRow",
    "average_abscissa",
    "build_report",
    "count_above",
    "count_bound_above_half",
    "density_ratio",
    "divisor_count_sieve",
    "excess_sum",
    "half_line_excess_bound",
    "left_excess_bound",
    "mobius_sieve",
    "mollifier_coeffs",
    "shifted_sum_main_term",
]

FOUR_PI = 4.0 * math.pi
TWO_PI = 2.0 * math.pi

# count_bound_above_half diverges at sigma = 1/2; keep a guard band.
SIGMA_GAP_MIN = 1e-3


# -- aggregation over zero lists ---------------------------------------------


def count_above(zeros: list[ZeroRecord], sigma: float) -> int:
    """N(sigma, T) from a zero list: multiplicity-weighted count of beta >= sigma."""
    return sum(z.multiplicity for z in zeros if z.beta >= sigma)


def excess_sum(zeros: list[ZeroRecord], sigma: float) -> float:
    """sum (beta - sigma) over zeros with beta > sigma, with multiplicity."""
    return float(sum(z.multiplicity * (z.beta - sigma) for z in zeros if z.beta > sigma))


def average_abscissa(zeros: list[ZeroRecord], X: int, T: float) -> float:
    """Mean abscissa (sum beta)/N(T); the distribution centers on zero."""
    n = sum(z.multiplicity for z in zeros)
    if n == 0:
        raise ValueError("average abscissa of an empty zero list is undefined")
    return float(sum(z.multiplicity * z.beta for z in zeros)) / n


# -- theoretical comparison values -------------------------------------------


def half_line_excess_bound(X: int, T: float) -> float:
    """(T/4pi) loglog X: bound for the excess sum over the line sigma = 1/2."""
    if X < 3:
        raise ValueError(f"bound requires X >= 3 so loglog X is defined, got {X}")
    if not X <= T:
        raise ValueError(f"bound requires X <= T, got X={X}, T={T}")
    return T / FOUR_PI * math.log(math.log(X))


def count_bound_above_half(X: int, T: float, sigma: float) -> float:
    """T loglog X / (4pi (sigma - 1/2)): count bound right of the half line."""
    if X < 3:
        raise ValueError(f"bound requires X >= 3, got {X}")
    if not X <= T:
        raise ValueError(f"bound requires X <= T, got X={X}, T={T}")
    if sigma - 0.5 < SIGMA_GAP_MIN:
        raise ValueError(
            f"sigma must exceed 1/2 by at least {SIGMA_GAP_MIN}, got {sigma}"
        )
    return T * math.log(math.log(X)) / (FOUR_PI * (sigma - 0.5))


def shifted_sum_main_term(X: int, T: float, U: float) -> float:
    """U (T/2pi) log X: main term of sum (beta + U) over zeros up to T."""
    if X < 2:
        raise ValueError(f"X must be >= 2, got {X}")
    if U < X:
        raise ValueError(f"U = {U} must be >= X = {X}")
    if T < X:
        raise ValueError(f"T = {T} must be >= X = {X}")
    return U * T / TWO_PI * math.log(X)


def left_excess_bound(X: int, T: float, sigma: float) -> float:
    """(1/2-sigma)(T/2pi) log X - (T/4pi) log(1-2 sigma), for sigma < 1/2."""
    if sigma >= 0.5:
        raise ValueError(f"sigma must be < 1/2, got {sigma}")
    if not 2 <= X <= T:
        raise ValueError(f"bound requires 2 <= X <= T, got X={X}, T={T}")
    return (0.5 - sigma) * T / TWO_PI * math.log(X) - T / FOUR_PI * math.log(1.0 - 2.0 * sigma)


def density_ratio(zeros: list[ZeroRecord], X: int, T: float, sigma: float) -> float:
    """N(sigma,T) / (T X^(1-2 sigma) log^6 T): report-only density ratio.

    The implied constant of the density bound is unknown, so nothing is
    asserted beyond finiteness; tabulating the ratio over a grid is the
    point.
    """
    if T <= 1:
        raise ValueError(f"T must exceed 1, got {T}")
    if sigma < 0.5 + 1.0 / math.log(T):
        raise ValueError(
            f"density ratio requires sigma >= 1/2 + 1/log T = {0.5 + 1.0 / math.log(T):.6f}"
        )
    return count_above(zeros, sigma) / (T * X ** (1.0 - 2.0 * sigma) * math.log(T) ** 6)


# -- report assembly ----------------------------------------------------------


@dataclass(frozen=True)
class StatRow:
    sigma: float
    n_sigma: int
    sum_excess: float
    bound_value: float | None
    bound_name: str


@dataclass(frozen=True)
class StatReport:
    X: int
    T: float
    n_total: int
    rows: list[StatRow]
    avg_beta: float
    U: float
    sum_beta_plus_U: float


def _row_bound(X: int, T: float, sigma: float) -> tuple[float | None, str]:
    try:
        if abs(sigma - 0.5) < 1e-12:
            return half_line_excess_bound(X, T), "half-line-excess"
        if sigma > 0.5:
            return count_bound_above_half(X, T, sigma), "count-above-half"
        return left_excess_bound(X, T, sigma), "left-excess"
    except ValueError:
        return None, "n/a"


def build_report(
    zeros: list[ZeroRecord],
    X: int,
    T: float,
    sigmas: list[float],
    U: float,
) -> StatReport:
    """Aggregate a complete zero list for (0, T] into a StatReport."""
    n_total = sum(z.multiplicity for z in zeros)
    rows = [
        StatRow(
            sigma=s,
            n_sigma=count_above(zeros, s),
            sum_excess=excess_sum(zeros, s),
            bound_value=_row_bound(X, T, s)[0],
            bound_name=_row_bound(X, T, s)[1],
        )
        for s in sorted(sigmas)
    ]
    avg = 0.0 if n_total == 0 else average_abscissa(zeros, X, T)
    shifted = float(sum(z.multiplicity * (z.beta + U) for z in zeros))
    return StatReport(
        X=int(X), T=float(T), n_total=n_total, rows=rows,
        avg_beta=avg, U=float(U), sum_beta_plus_U=shifted,
    )


# -- mollifier coefficient layer ----------------------------------------------


def mobius_sieve(limit: int) -> np.ndarray:
    """mu(0..limit) as an integer array (mu(0) set to 0)."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    mu = np.ones(limit + 1, dtype=np.int64)
    mu[0] = 0
    is_comp = np.zeros(limit + 1, dtype=bool)
    for p in range(2, limit + 1):
        if is_comp[p]:
            continue
        is_comp[p * p :: p] = True
        mu[p::p] *= -1
        sq = p * p
        if sq <= limit:
            mu[sq::sq] = 0
    return mu


def divisor_count_sieve(limit: int) -> np.ndarray:
    """d(0..limit): number of divisors, by harmonic sweep (exact integers)."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    d = np.zeros(limit + 1, dtype=np.int64)
    for k in range(1, limit + 1):
        d[k::k] += 1
    return d


@dataclass(frozen=True)
class MollifierCoeffs:
    """Exact coefficients a(n) of the mollified product, 1 <= n <= X*Y.

    a(1) = 1, |a(n)| <= d(n) everywhere, and a(n) = 0 for n > X*Y.  The
    vanishing a(n) = 0 for 1 < n < X only holds once Y >= X (for short
    mollifiers the Moebius sum over constrained divisors need not
    telescope), so nothing is asserted about that range here.
    """

    X: int
    Y: int
    a: np.ndarray  # index n, valid 0..X*Y; a[0] unused

    def coeff(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"n must be >= 1, got {n}")
        if n > self.X * self.Y:
            return 0
        return int(self.a[n])


def mollifier_coeffs(X: int, Y: int) -> MollifierCoeffs:
    """a(n) = sum_{d | n, d <= Y, n/d <= X} mu(d), exact over 1 <= n <= XY."""
    if X < 2 or Y < 2:
        raise ValueError(f"X and Y must both be >= 2, got X={X}, Y={Y}")
    X, Y = int(X), int(Y)
    limit = X * Y
    mu = mobius_sieve(Y)
    a = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, Y + 1):
        if mu[d] == 0:
            continue
        # n = d*m with m <= X; automatically n <= d*X <= Y*X
        a[d : d * X + 1 : d] += mu[d]
    return MollifierCoeffs(X=X, Y=Y, a=a)
