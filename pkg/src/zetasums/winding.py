"""Continuous-argument tracking and argument-principle zero counts.

The count of zeros inside an axis-aligned rectangle equals the net change of
the continuous argument of F around the boundary divided by 2*pi.  Argument
lifts are built by sampling each edge, bisecting every sub-segment whose raw
phase jump reaches pi/2, and then verifying stability: the whole grid is
halved until one extra global refinement level moves the net change by less
than 1e-9.  That loop is what defeats phase aliasing on edges where the
argument drifts fast (the far-left edge turns at log X radians per unit t).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryZeroError, NonIntegralWindingError, ZeroOnPathError
from .partial_sum import PartialSumSpec

__all__ = [
    "ArgTrace",
    "Rectangle",
    "count_main_term",
    "count_up_to",
    "rectangle_winding",
    "top_edge_sign_change_bound",
    "track_argument",
]

TWO_PI = 2.0 * math.pi

# Counting contours start just above the real axis, which carries no zeros.
T_FLOOR = 1e-6

# Base boundary-shift step, scaled by (1 + |t|) and doubled on retry.
PERTURB_EPS = 1e-6
PERTURB_RETRIES = 5

_MIN_SAMPLES = 16      # minimum intervals per edge
_MIN_DU = 1e-10        # smallest sub-segment (in path parameter) before giving up
_STAB_TOL = 1e-9       # net-change agreement required between refinement levels
_POINT_BUDGET = 400_000


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned closed region [sigma_min, sigma_max] x [t_min, t_max]."""

    sigma_min: float
    sigma_max: float
    t_min: float
    t_max: float

    def __post_init__(self):
        vals = (self.sigma_min, self.sigma_max, self.t_min, self.t_max)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"rectangle coordinates must be finite: {vals}")
        if not (self.sigma_min < self.sigma_max and self.t_min < self.t_max):
            raise ValueError(f"degenerate rectangle: {vals}")

    @property
    def width(self) -> float:
        return self.sigma_max - self.sigma_min

    @property
    def height(self) -> float:
        return self.t_max - self.t_min

    def contains(self, s: complex, slack: float = 0.0) -> bool:
        return (
            self.sigma_min - slack <= s.real <= self.sigma_max + slack
            and self.t_min - slack <= s.imag <= self.t_max + slack
        )

    def corners_ccw(self) -> list[complex]:
        return [
            complex(self.sigma_min, self.t_min),
            complex(self.sigma_max, self.t_min),
            complex(self.sigma_max, self.t_max),
            complex(self.sigma_min, self.t_max),
        ]


@dataclass
class ArgTrace:
    """Sampled continuous-argument lift along one straight segment."""

    params: np.ndarray      # path parameter in [0, 1], ascending
    phases: np.ndarray      # lifted argument, radians
    total_variation: float
    net_change: float


def _wrap(d: np.ndarray) -> np.ndarray:
    """Reduce raw phase differences to (-pi, pi] (ties resolved by round-even)."""
    return d - TWO_PI * np.round(d / TWO_PI)


class _SegmentTrace:
    """Workhorse behind track_argument; keeps values for later lift queries."""

    def __init__(self, spec: PartialSumSpec, s_from: complex, s_to: complex):
        self.spec = spec
        self.s_from = complex(s_from)
        self.s_to = complex(s_to)
        self.delta = self.s_to - self.s_from
        if self.delta == 0:
            raise ValueError("trace segment must have nonzero length")
        self._vertical = self.s_from.real == self.s_to.real
        if self._vertical:
            self._thresh0 = spec.zero_threshold(self.s_from.real)
        self._build()

    def _points(self, us: np.ndarray) -> np.ndarray:
        return self.s_from + us.astype(np.complex128) * self.delta

    def _eval(self, us: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        pts = self._points(us)
        vals = self.spec.evaluate_many(pts)
        if self._vertical:
            thresh = self._thresh0
        else:
            scl = self.spec.scale_many(pts.real)
            thresh = self.spec.eval_tol * np.maximum(1.0, scl)
        small = np.abs(vals) < thresh
        if np.any(small):
            i = int(np.argmax(small))
            raise ZeroOnPathError(
                f"|F| below zero threshold at {pts[i]}", where=complex(pts[i])
            )
        return vals, np.angle(vals)

    def _merge(self, new_us: np.ndarray) -> None:
        vals, raws = self._eval(new_us)
        us = np.concatenate((self.us, new_us))
        order = np.argsort(us, kind="stable")
        self.us = us[order]
        self.vals = np.concatenate((self.vals, vals))[order]
        self.raws = np.concatenate((self.raws, raws))[order]

    def _build(self) -> None:
        self.us = np.linspace(0.0, 1.0, _MIN_SAMPLES + 1)
        self.vals, self.raws = self._eval(self.us)
        prev_net = None
        while True:
            # local pi/2 refinement
            while True:
                deltas = _wrap(np.diff(self.raws))
                du = np.diff(self.us)
                bad = np.abs(deltas) >= 0.5 * math.pi
                if not np.any(bad):
                    break
                tiny = bad & (du <= _MIN_DU)
                if np.any(tiny):
                    i = int(np.argmax(tiny))
                    u_mid = self.us[i] + 0.5 * du[i]
                    raise ZeroOnPathError(
                        f"phase unresolvable near {self._points(np.array([u_mid]))[0]}",
                        where=complex(self._points(np.array([u_mid]))[0]),
                    )
                if self.us.size > _POINT_BUDGET:
                    raise ZeroOnPathError("trace refinement budget exceeded")
                mids = self.us[:-1][bad] + 0.5 * du[bad]
                self._merge(mids)
            net = float(np.sum(_wrap(np.diff(self.raws))))
            if prev_net is not None and abs(net - prev_net) < _STAB_TOL:
                break
            if self.us.size > _POINT_BUDGET:
                raise ZeroOnPathError("trace refinement budget exceeded")
            prev_net = net
            self._merge(self.us[:-1] + 0.5 * np.diff(self.us))
        deltas = _wrap(np.diff(self.raws))
        self.phases = self.raws[0] + np.concatenate(([0.0], np.cumsum(deltas)))
        self.net_change = float(self.phases[-1] - self.phases[0])
        self.total_variation = float(np.sum(np.abs(deltas)))

    def lift_at(self, us: np.ndarray) -> np.ndarray:
        """Continuous-argument values at arbitrary path parameters."""
        us = np.asarray(us, dtype=np.float64)
        _, raw_q = self._eval(us)
        j = np.searchsorted(self.us, us)
        j = np.clip(j, 1, self.us.size - 1)
        left_closer = (us - self.us[j - 1]) <= (self.us[j] - us)
        idx = np.where(left_closer, j - 1, j)
        return self.phases[idx] + _wrap(raw_q - self.raws[idx])

    def as_arg_trace(self) -> ArgTrace:
        return ArgTrace(
            params=self.us.copy(),
            phases=self.phases.copy(),
            total_variation=self.total_variation,
            net_change=self.net_change,
        )


def track_argument(spec: PartialSumSpec, s_from: complex, s_to: complex) -> ArgTrace:
    """Continuous lift of arg F along the segment from s_from to s_to.

    Raises zero-on-path when any sample is indistinguishable from a zero or
    the phase cannot be resolved at the minimum sub-segment length; callers
    perturb the path and retry.
    """
    return _SegmentTrace(spec, s_from, s_to).as_arg_trace()


_EDGE_NAMES = ("bottom", "right", "top", "left")


def rectangle_winding(spec: PartialSumSpec, rect: Rectangle) -> int:
    """Number of zeros strictly inside rect, by the argument principle.

    The pre-rounding winding must land within 0.01 of a nonnegative integer;
    anything else signals a missed zero on the path or insufficient
    tolerance.
    """
    corners = rect.corners_ccw()
    total = 0.0
    for k in range(4):
        a, b = corners[k], corners[(k + 1) % 4]
        try:
            total += _SegmentTrace(spec, a, b).net_change
        except ZeroOnPathError as exc:
            raise BoundaryZeroError(
                f"zero on {_EDGE_NAMES[k]} edge of {rect}: {exc}",
                edge=_EDGE_NAMES[k],
                where=exc.where,
            ) from exc
    w = total / TWO_PI
    n = round(w)
    if abs(w - n) > 0.01:
        raise NonIntegralWindingError(
            f"winding {w:.6f} is not within 0.01 of an integer for {rect}"
        )
    if n < 0:
        raise NonIntegralWindingError(
            f"negative winding {n} for a zero-free-pole function on {rect}"
        )
    return int(n)


def perturbed_winding(spec: PartialSumSpec, rect: Rectangle, *, grow: bool = True):
    """rectangle_winding with the standard boundary-shift retry policy.

    On a boundary zero the offending edge is moved outward (or inward when
    ``grow`` is false) by eps = PERTURB_EPS * (1 + |t|), doubling up to
    PERTURB_RETRIES times; mirrors the limit-from-above counting convention.
    Returns (count, possibly-shifted rectangle).
    """
    r = rect
    for attempt in range(PERTURB_RETRIES + 1):
        try:
            return rectangle_winding(spec, r), r
        except BoundaryZeroError as exc:
            if attempt == PERTURB_RETRIES:
                raise
            eps = PERTURB_EPS * (1.0 + abs(r.t_max)) * (2.0 ** attempt)
            sign = 1.0 if grow else -1.0
            if exc.edge == "top":
                r = Rectangle(r.sigma_min, r.sigma_max, r.t_min, r.t_max + sign * eps)
            elif exc.edge == "bottom":
                r = Rectangle(r.sigma_min, r.sigma_max, r.t_min - sign * eps, r.t_max)
            elif exc.edge == "right":
                r = Rectangle(r.sigma_min, r.sigma_max + sign * eps, r.t_min, r.t_max)
            else:
                r = Rectangle(r.sigma_min - sign * eps, r.sigma_max, r.t_min, r.t_max)
    raise AssertionError("unreachable")


def count_up_to(spec: PartialSumSpec, T: float, U: float) -> int:
    """N(T): zeros with 0 < gamma <= T, counted on [-U, 2] x [T_FLOOR, T].

    Requires U >= X so the left edge is zero-free.  If T is the ordinate of
    a zero the top edge is shifted upward by the standard eps policy
    (limit-from-above convention), so such zeros are included.
    """
    if U < spec.X:
        raise ValueError(f"U = {U} must be >= X = {spec.X} for a zero-free left edge")
    if T <= T_FLOOR:
        raise ValueError(f"T must exceed the bottom-edge floor {T_FLOOR}, got {T}")
    rect = Rectangle(-float(U), 2.0, T_FLOOR, float(T))
    count, _ = perturbed_winding(spec, rect, grow=True)
    return count


def count_main_term(X: int, T: float) -> float:
    """Leading term T/(2*pi) * log X of the zero count up to height T."""
    if X < 2:
        raise ValueError(f"X must be >= 2, got {X}")
    return T / TWO_PI * math.log(X)


def top_edge_sign_change_bound(spec: PartialSumSpec, T: float) -> int:
    """Sign changes in (sin(T log n))_{2<=n<=X}, exact zeros skipped.

    By the Descartes-rule generalization for exponential sums this bounds the
    number of zeros of Im F(sigma + iT) on any sigma-interval, hence the
    argument variation along the top edge is at most pi * (changes + 2).
    """
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    vals = np.sin(T * np.log(np.arange(2, spec.X + 1, dtype=np.float64)))
    signs = np.sign(vals)
    signs = signs[signs != 0.0]
    if signs.size < 2:
        return 0
    return int(np.count_nonzero(np.diff(signs) != 0.0))
