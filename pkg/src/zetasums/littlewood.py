"""Boundary integrals of log|F| and arg F, and the two-sided lemma check.

Littlewood's lemma turns the multiplicity-weighted excess sum
2*pi * sum (beta - sigma0) over zeros in [sigma0, 2] x (0, T] into four
boundary integrals.  Both sides are computed independently here, which makes
the residual of the identity a single number that cross-validates the zero
finder, the argument tracker, and the quadrature at once.

Near-line zeros give the vertical integrand log|F(sigma0+it)| integrable
log singularities.  Each declared ordinate gets a window in which
log|s - rho| is subtracted (its integral is added back in closed form) so
the adaptive panels see a smooth function; outside the windows the raw
integrand is already benign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergenceError, ZeroOnPathError
from .partial_sum import PartialSumSpec
from .quadrature import integrate_adaptive
from .winding import _SegmentTrace
from .zeros import ZeroRecord, refine

__all__ = [
    "LittlewoodCheck",
    "arg_integral_horizontal",
    "integrate_log_abs",
    "littlewood_identity_check",
    "mean_square_integral",
]

TWO_PI = 2.0 * math.pi

# Zeros within this distance of the integration line are treated as singular.
NEAR_LINE = 0.05

_WINDOW_MAX = 0.3
_LOG_FLOOR = 1e-300


def _default_tol(T: float) -> float:
    return 1e-6 * max(1.0, T)


def _log_antiderivative(x: np.ndarray, a: float) -> np.ndarray:
    """Antiderivative of 0.5*log(a^2 + x^2) at offsets x from the ordinate."""
    x = np.asarray(x, dtype=np.float64)
    if a == 0.0:
        out = np.where(x == 0.0, 0.0, x * np.log(np.maximum(np.abs(x), _LOG_FLOOR)) - x)
        return out
    return 0.5 * (x * np.log(a * a + x * x) - 2.0 * x) + a * np.arctan(x / a)


def _locate_near_line_zero(spec, sigma0: float, gamma: float) -> complex | None:
    """Newton from sigma0 + i*gamma; None when no genuine nearby zero exists."""
    try:
        rec = refine(spec, complex(sigma0, gamma), residual_tol=1e-9)
    except NoConvergenceError:
        return None
    rho = rec.point
    if abs(rho.imag - gamma) > 0.1 or abs(rho.real - sigma0) > 2 * NEAR_LINE:
        return None
    return rho


def integrate_log_abs(
    spec: PartialSumSpec,
    sigma0: float,
    T: float,
    zero_ordinates=(),
    quad_tol: float | None = None,
) -> float:
    """Integral of log|F(sigma0 + it)| over 0 < t < T.

    ``zero_ordinates`` lists the gamma of zeros with |beta - sigma0| below
    NEAR_LINE; the quadrature grades panels toward each and subtracts the
    local log|s - rho| term, integrating the subtraction in closed form.
    """
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    tol = _default_tol(T) if quad_tol is None else float(quad_tol)

    def raw(t: np.ndarray) -> np.ndarray:
        vals = spec.evaluate_many(sigma0 + 1j * t)
        return np.log(np.maximum(np.abs(vals), _LOG_FLOOR))

    gammas = sorted({float(g) for g in zero_ordinates if 0.0 < float(g) < T})
    windows: list[tuple[float, float, complex]] = []
    for i, g in enumerate(gammas):
        rho = _locate_near_line_zero(spec, sigma0, g)
        if rho is None:
            continue
        left = _WINDOW_MAX if i == 0 else min(_WINDOW_MAX, 0.5 * (g - gammas[i - 1]))
        right = _WINDOW_MAX if i == len(gammas) - 1 else min(_WINDOW_MAX, 0.5 * (gammas[i + 1] - g))
        lo = max(0.0, g - left)
        hi = min(T, g + right)
        if hi > lo:
            windows.append((lo, hi, rho))

    total = 0.0
    cursor = 0.0
    for lo, hi, rho in windows:
        if lo > cursor:
            total += integrate_adaptive(raw, cursor, lo, tol * (lo - cursor) / T)
        a = sigma0 - rho.real
        deriv_at_rho = abs(spec.derivative(rho))

        def smooth(t: np.ndarray, rho=rho, fallback=deriv_at_rho) -> np.ndarray:
            s = sigma0 + 1j * t
            dist = np.abs(s - rho)
            vals = np.abs(spec.evaluate_many(s))
            ratio = np.where(dist > 1e-14, vals / np.maximum(dist, _LOG_FLOOR), fallback)
            return np.log(np.maximum(ratio, _LOG_FLOOR))

        total += integrate_adaptive(smooth, lo, hi, tol * (hi - lo) / T, split_points=(rho.imag,))
        total += float(
            _log_antiderivative(np.array([hi - rho.imag]), a)[0]
            - _log_antiderivative(np.array([lo - rho.imag]), a)[0]
        )
        cursor = hi
    if cursor < T:
        total += integrate_adaptive(raw, cursor, T, tol * (T - cursor) / T)
    return total


def arg_integral_horizontal(
    spec: PartialSumSpec,
    t: float,
    sigma_from: float,
    sigma_to: float,
    quad_tol: float | None = None,
) -> float:
    """Integral over sigma of the continuous arg F(sigma + it).

    The lift is anchored at sigma = 2 with the value of the continuous
    variation from the real axis, which is just the principal argument there
    because Re F(2 + it) > 0.  At t = 0 the sum is real and positive, so the
    integral is exactly zero.
    """
    if sigma_from == sigma_to:
        return 0.0
    if t == 0.0:
        return 0.0
    lo = min(sigma_from, sigma_to, 2.0)
    hi = max(sigma_from, sigma_to, 2.0)
    tol = 1e-6 * max(1.0, hi - lo) if quad_tol is None else float(quad_tol)

    traces = []
    if lo < 2.0:
        traces.append((lo, 2.0, _SegmentTrace(spec, complex(2.0, t), complex(lo, t))))
    if hi > 2.0:
        traces.append((2.0, hi, _SegmentTrace(spec, complex(2.0, t), complex(hi, t))))

    def lift(sig: np.ndarray) -> np.ndarray:
        out = np.empty_like(sig)
        for a, b, tr in traces:
            mask = (sig >= a - 1e-15) & (sig <= b + 1e-15)
            if not np.any(mask):
                continue
            start = tr.s_from.real
            end = tr.s_to.real
            u = (sig[mask] - start) / (end - start)
            out[mask] = tr.lift_at(np.clip(u, 0.0, 1.0))
        return out

    a, b = min(sigma_from, sigma_to), max(sigma_from, sigma_to)
    val = integrate_adaptive(lift, a, b, tol)
    return val if sigma_from < sigma_to else -val


def mean_square_integral(
    spec: PartialSumSpec, sigma: float, T: float, quad_tol: float | None = None
) -> float:
    """Integral of |F(sigma + it)|^2 over 0 < t < T (smooth integrand)."""
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    tol = _default_tol(T) if quad_tol is None else float(quad_tol)

    def f(t: np.ndarray) -> np.ndarray:
        vals = spec.evaluate_many(sigma + 1j * t)
        return np.abs(vals) ** 2

    return integrate_adaptive(f, 0.0, T, tol)


@dataclass(frozen=True)
class LittlewoodCheck:
    """Both sides of the lemma on [sigma0, 2] x (0, T], and their residual."""

    sigma0: float
    T: float
    lhs: float                  # 2*pi * sum (beta - sigma0) over beta > sigma0
    rhs_log_integral: float     # integral of log|F| on the sigma0 line
    rhs_ref_integral: float     # integral of log|F| on the sigma = 2 line
    rhs_arg_integrals: float    # top-edge minus bottom-edge arg integrals
    discrepancy: float

    @property
    def rhs(self) -> float:
        return self.rhs_log_integral - self.rhs_ref_integral + self.rhs_arg_integrals


def littlewood_identity_check(
    spec: PartialSumSpec,
    sigma0: float,
    T: float,
    zeros: list[ZeroRecord],
    quad_tol: float | None = None,
) -> LittlewoodCheck:
    """Evaluate both sides of the lemma from an already-complete zero list.

    ``zeros`` must contain every zero with 0 < gamma <= T.  If the top edge
    happens to pass through a zero it is nudged upward (limit-from-above
    convention), with the vertical integrals extended to match.
    """
    if sigma0 >= 2.0:
        raise ValueError(f"sigma0 must be < 2, got {sigma0}")
    zs = [z for z in zeros if 0.0 < z.gamma <= T]
    lhs = TWO_PI * sum(z.multiplicity * (z.beta - sigma0) for z in zs if z.beta > sigma0)
    ordinates = [z.gamma for z in zs if abs(z.beta - sigma0) < NEAR_LINE]

    t_top = float(T)
    gap = min((abs(z.gamma - T) for z in zs), default=math.inf)
    eps = 1e-6 * (1.0 + T)
    if gap < eps:
        t_top = T + eps
    last_exc: Exception | None = None
    for _ in range(6):
        try:
            a_top = arg_integral_horizontal(spec, t_top, sigma0, 2.0, quad_tol)
            break
        except ZeroOnPathError as exc:
            last_exc = exc
            t_top += eps
            eps *= 2.0
    else:
        raise ZeroOnPathError(f"could not move the top edge off zeros: {last_exc}")

    rhs_log = integrate_log_abs(spec, sigma0, t_top, ordinates, quad_tol)
    rhs_ref = integrate_log_abs(spec, 2.0, t_top, (), quad_tol)
    a_bot = arg_integral_horizontal(spec, 0.0, sigma0, 2.0, quad_tol)
    arg_terms = a_top - a_bot
    rhs = rhs_log - rhs_ref + arg_terms
    return LittlewoodCheck(
        sigma0=float(sigma0),
        T=float(T),
        lhs=float(lhs),
        rhs_log_integral=rhs_log,
        rhs_ref_integral=rhs_ref,
        rhs_arg_integrals=arg_terms,
        discrepancy=float(lhs - rhs),
    )
