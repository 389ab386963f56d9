"""Zero-strip endpoints and zero-free half-plane thresholds.

The zeros of the length-X truncated zeta sum lie in a vertical strip
alpha < sigma < beta, where alpha solves

    1 + 2^(-sigma) + ... + (X-1)^(-sigma) = X^(-sigma)

and beta solves

    2^(-sigma) + 3^(-sigma) + ... + X^(-sigma) = 1.

Both are found by bisection on the sign of the difference of the two sides,
evaluated in log space so that arbitrarily large X (and sigma near -X) never
overflow.  beta stays below 1.72865 for every X; that constant is used only
as a bracket endpoint and an upper bound, never as an attained value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BETA_SUP",
    "MONTGOMERY_C_MIN",
    "StripBounds",
    "alpha_bound",
    "beta_bound",
    "compute_strip",
    "montgomery_line",
    "turan_line",
]

# Safe upper bracket for beta: the right strip edge never reaches it.
BETA_SUP = 1.72865

# Smallest admissible constant in the refined zero-free line, 4/pi - 1.
MONTGOMERY_C_MIN = 4.0 / math.pi - 1.0


def _logsumexp(values: np.ndarray) -> float:
    m = float(np.max(values))
    return m + math.log(float(np.sum(np.exp(values - m))))


def _bisect_sign(f, lo: float, hi: float, tol: float) -> float:
    """Bisect a sign change of f on [lo, hi]; returns midpoint of final bracket."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ValueError("bisection bracket does not straddle a sign change")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def alpha_bound(X: int, tol: float = 1e-12) -> float:
    """Left strip edge: the root of 1 + sum_{n<X} n^(-s) - X^(-s) in (-X, 0].

    The sign of the defining difference is evaluated as
    logsumexp{0, -s log n : 2<=n<=X-1} - (-s log X), which never overflows.
    """
    X = _check_x(X)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    log_n = np.log(np.arange(2, X, dtype=np.float64))  # 2 .. X-1, empty for X=2

    def sign_fn(sigma: float) -> float:
        lhs = _logsumexp(np.concatenate(([0.0], -sigma * log_n)))
        return lhs - (-sigma * math.log(X))

    # sign_fn(0) = log(X-1) - 0 >= 0, sign_fn(-X) < 0 by left-edge domination
    return _bisect_sign(sign_fn, -float(X), 0.0, tol)


def beta_bound(X: int, tol: float = 1e-12) -> float:
    """Right strip edge: the unique root of sum_{2<=n<=X} n^(-s) = 1.

    The left side is strictly decreasing in s, equals X-1 at s=0, and tends
    to ~2^(-s) < 1 beyond the bracket, so [0, BETA_SUP] always straddles.
    """
    X = _check_x(X)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    log_n = np.log(np.arange(2, X + 1, dtype=np.float64))

    def sign_fn(sigma: float) -> float:
        return _logsumexp(-sigma * log_n)  # log of the sum; root where it is 0

    return _bisect_sign(sign_fn, 0.0, BETA_SUP, tol)


def turan_line(X: int) -> float:
    """Zero-free half-plane threshold 1 + 2*loglog(X)/log(X) (X >= 16)."""
    X = _check_x(X)
    if X < 16:
        raise ValueError(f"turan_line requires X >= 16 so loglog X > 0, got {X}")
    return 1.0 + 2.0 * math.log(math.log(X)) / math.log(X)


def montgomery_line(X: int, c: float) -> float:
    """Report-only refined threshold 1 + c*loglog(X)/log(X), c > 4/pi - 1."""
    X = _check_x(X)
    if X < 16:
        raise ValueError(f"montgomery_line requires X >= 16, got {X}")
    if not c > MONTGOMERY_C_MIN:
        raise ValueError(
            f"constant c must exceed 4/pi - 1 = {MONTGOMERY_C_MIN:.6f}, got {c}"
        )
    return 1.0 + c * math.log(math.log(X)) / math.log(X)


@dataclass(frozen=True)
class StripBounds:
    """Solved strip endpoints for one truncation point."""

    alpha: float
    beta: float
    X: int
    tol: float

    def __post_init__(self):
        if self.X == 2:
            if not (abs(self.alpha) <= self.tol and abs(self.beta) <= self.tol):
                raise ValueError("X=2 strip must degenerate to alpha=beta=0")
        elif not self.alpha < self.beta:
            raise ValueError(f"alpha={self.alpha} must be < beta={self.beta} for X>=3")
        if not (self.alpha > -self.X and self.beta < BETA_SUP):
            raise ValueError("strip endpoints out of the guaranteed range")


def compute_strip(X: int, tol: float = 1e-12) -> StripBounds:
    return StripBounds(alpha=alpha_bound(X, tol), beta=beta_bound(X, tol), X=int(X), tol=tol)


def _check_x(X) -> int:
    if int(X) != X or X < 2:
        raise ValueError(f"X must be an integer >= 2, got {X}")
    return int(X)
