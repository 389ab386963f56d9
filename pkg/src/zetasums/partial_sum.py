"""Evaluation kernel for the truncated zeta sum F(s) = sum_{n<=X} n^(-s).

Everything else in the package funnels through this module: plain values,
derivatives, log-magnitudes, and the diagonal mean-square main term.  All
sums run in ascending n with Kahan compensation so results are
bit-reproducible for a fixed truncation point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np

from .errors import AtZeroError, EvaluationOverflowError

__all__ = [
    "PartialSumSpec",
    "mean_square_main_term",
]


def _kahan_reduce(coeffs: np.ndarray, log_n: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Sum coeffs[k] * exp(-s * log_n[k]) over k, compensated, ascending n.

    ``s`` may be any complex array; the loop runs over the X terms and keeps
    the whole point batch vectorized, which is where the time goes for
    traces and quadrature.
    """
    total = np.zeros(s.shape, dtype=np.complex128)
    comp = np.zeros(s.shape, dtype=np.complex128)
    for c, ln in zip(coeffs, log_n):
        term = c * np.exp(-s * ln)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return total


@dataclass(frozen=True)
class PartialSumSpec:
    """Truncation point X (number of summed terms) plus working tolerance.

    ``eval_tol`` is the absolute accuracy target of evaluation and doubles as
    the "this is a zero" threshold, always measured against the natural
    magnitude scale sum n^(-sigma) at the point in question.  Instances are
    immutable; the log table is built once, so specs are safe to share
    across workers.
    """

    X: int
    eval_tol: float = 1e-12
    _log_n: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.X) != self.X or self.X < 2:
            raise ValueError(f"truncation point X must be an integer >= 2, got {self.X}")
        if not (0.0 < self.eval_tol <= 1e-6):
            raise ValueError(f"eval_tol must lie in (0, 1e-6], got {self.eval_tol}")
        object.__setattr__(self, "X", int(self.X))
        object.__setattr__(
            self, "_log_n", np.log(np.arange(1, self.X + 1, dtype=np.float64))
        )

    # -- evaluation ---------------------------------------------------------

    def _check_domain(self, sigma_min: float) -> None:
        if sigma_min < -2.0 * self.X:
            raise EvaluationOverflowError(
                f"Re s = {sigma_min} < {-2 * self.X}: magnitudes exceed the "
                "representable range (no zeros lie this far left)",
                where=sigma_min,
            )

    def evaluate_many(self, s: np.ndarray) -> np.ndarray:
        """F(s) on an array of complex points."""
        s = np.asarray(s, dtype=np.complex128)
        self._check_domain(float(np.min(s.real)) if s.size else 0.0)
        out = _kahan_reduce(np.ones(self.X), self._log_n, s)
        if not np.all(np.isfinite(out)):
            raise EvaluationOverflowError("partial sum overflowed to non-finite")
        return out

    def evaluate(self, s: complex) -> complex:
        """F(s) at one point."""
        return complex(self.evaluate_many(np.array([s]))[0])

    def derivative_many(self, s: np.ndarray) -> np.ndarray:
        """F'(s) = -sum (log n) n^(-s) on an array of points."""
        s = np.asarray(s, dtype=np.complex128)
        self._check_domain(float(np.min(s.real)) if s.size else 0.0)
        out = _kahan_reduce(-self._log_n, self._log_n, s)
        if not np.all(np.isfinite(out)):
            raise EvaluationOverflowError("derivative overflowed to non-finite")
        return out

    def derivative(self, s: complex) -> complex:
        return complex(self.derivative_many(np.array([s]))[0])

    def scale_many(self, sigma: np.ndarray) -> np.ndarray:
        """sum n^(-sigma): the magnitude at which cancellation noise sits.

        |F(sigma+it)| <= scale(sigma) for every t, and double-precision
        evaluation error is a few ulps of this quantity, so zero tests and
        "too close to a zero" guards are taken relative to it.
        """
        sigma = np.asarray(sigma, dtype=np.float64)
        self._check_domain(float(np.min(sigma)) if sigma.size else 0.0)
        out = _kahan_reduce(np.ones(self.X), self._log_n, sigma.astype(np.complex128))
        return out.real

    def scale(self, sigma: float) -> float:
        return float(self.scale_many(np.array([sigma]))[0])

    def zero_threshold(self, sigma: float) -> float:
        """Absolute |F| below which a point counts as sitting on a zero."""
        return self.eval_tol * max(1.0, self.scale(sigma))

    def log_abs(self, s: complex) -> float:
        """log|F(s)|; signals at-zero when |F| is below the zero threshold."""
        s = complex(s)
        value = abs(self.evaluate(s))
        if value < self.zero_threshold(s.real):
            raise AtZeroError(f"|F({s})| = {value}: too close to a zero for log", where=s)
        return math.log(value)

    # -- extended precision hook --------------------------------------------

    def evaluate_mp(self, s, dps: int = 40):
        """F(s) in mpmath arithmetic; used to polish deep-left zeros."""
        with mp.workdps(dps):
            sm = mp.mpc(s)
            return mp.fsum(mp.power(n, -sm) for n in range(1, self.X + 1))

    def derivative_mp(self, s, dps: int = 40):
        with mp.workdps(dps):
            sm = mp.mpc(s)
            return -mp.fsum(mp.log(n) * mp.power(n, -sm) for n in range(2, self.X + 1))


def mean_square_main_term(spec: PartialSumSpec, sigma: float, T: float) -> float:
    """Diagonal main term T * sum n^(-2*sigma) of the mean square of F.

    This is the Montgomery-Vaughan main term of the integral of
    |F(sigma+it)|^2 over 0 < t < T; the off-diagonal remainder is O(n) per
    term and is what the mean-square acceptance checks measure.
    """
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    return T * spec.scale(2.0 * sigma)
