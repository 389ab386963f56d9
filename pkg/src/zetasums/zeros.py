"""Zero localization: winding-guided quadrisection plus Newton refinement.

A rectangle with winding w is split into four (nearly) equal cells, nudging
the split lines off any zero they happen to hit, until each cell isolates a
single zero; damped Newton from the cell center then polishes it.  Cells
that cannot be split below the minimum size with winding >= 2 are recorded
once with a multiplicity flag, and every statistic downstream counts them
with that multiplicity, consistent with the argument principle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .errors import (
    BoundaryZeroError,
    EvaluationOverflowError,
    NoConvergenceError,
    NonIntegralWindingError,
    ZeroOnPathError,
)
from .partial_sum import PartialSumSpec
from .winding import PERTURB_EPS, Rectangle, perturbed_winding, rectangle_winding

__all__ = ["ZeroRecord", "locate_zeros", "refine"]

RESIDUAL_TOL_DEFAULT = 1e-10
MIN_CELL_SIDE = 1e-8       # below this, winding >= 2 is reported as a multiple zero
_NEWTON_SIDE = 1.75        # try Newton once cells are this small
_MAX_NEWTON_ITERS = 60
_SPLIT_RETRIES = 5


@dataclass(frozen=True)
class ZeroRecord:
    """One located zero beta + i*gamma with its isolating cell."""

    beta: float
    gamma: float
    residual: float
    newton_iters: int
    cell: Rectangle
    multiplicity: int = 1

    @property
    def point(self) -> complex:
        return complex(self.beta, self.gamma)


def _mp_polish(spec, s: complex, residual_tol: float, iters_used: int):
    """Extended-precision Newton polish for deep-left zeros.

    Double precision cannot push |F| below ~1e-16 * sum n^(-beta); when that
    noise floor sits above residual_tol the last digits are recovered in
    mpmath at a precision chosen from the local magnitude scale.
    """
    scale = spec.scale(s.real)
    dps = 25 + max(0, int(math.log10(max(scale, 1.0)))) + max(0, -int(math.log10(residual_tol)))
    z = mp.mpc(s)
    resid = None
    for k in range(12):
        f = spec.evaluate_mp(z, dps=dps)
        resid = abs(f)
        if resid <= 0.5 * residual_tol:
            return complex(z), float(resid), iters_used + k
        fp = spec.derivative_mp(z, dps=dps)
        if fp == 0:
            break
        with mp.workdps(dps):
            z = z - f / fp
    raise NoConvergenceError(
        f"extended-precision polish stalled at |F| = {float(resid):.3g} near {complex(z)}",
        where=complex(z),
    )


def refine(
    spec: PartialSumSpec,
    start: complex,
    residual_tol: float = RESIDUAL_TOL_DEFAULT,
    cell: Rectangle | None = None,
) -> ZeroRecord:
    """Damped Newton iteration s <- s - lambda F/F' from ``start``.

    lambda is halved until |F| decreases.  Convergence means |F| <=
    residual_tol; when double precision bottoms out above that (possible far
    left in the strip, where cancellation noise scales with sum n^(-beta))
    the mpmath polish finishes the job.  The result must stay inside the
    doubled isolating cell when one is given.
    """
    if residual_tol <= 0:
        raise ValueError(f"residual_tol must be positive, got {residual_tol}")
    s = complex(start)
    f = spec.evaluate(s)
    af = abs(f)
    iters = 0
    step_cap = 1.0 if cell is None else max(1.0, math.hypot(cell.width, cell.height))
    while af > residual_tol and iters < _MAX_NEWTON_ITERS:
        fp = spec.derivative(s)
        if fp == 0:
            raise NoConvergenceError(f"F' vanished at {s}", where=s)
        step = f / fp
        if abs(step) > step_cap:
            step *= step_cap / abs(step)
        lam = 1.0
        s_new, f_new, af_new = None, None, None
        for _ in range(30):
            cand = s - lam * step
            try:
                fc = spec.evaluate(cand)
            except EvaluationOverflowError:
                lam *= 0.5
                continue
            if abs(fc) < af:
                s_new, f_new, af_new = cand, fc, abs(fc)
                break
            lam *= 0.5
        iters += 1
        if s_new is None:
            break  # stuck at the double-precision noise floor
        s, f, af = s_new, f_new, af_new
        if abs(lam * step) < 1e-13 * (1.0 + abs(s)) and af <= residual_tol:
            break
    if af > residual_tol:
        # Position is converged iff |F| sits at the local cancellation floor;
        # anything much above that is a genuine failure, not a precision one.
        if af > 1e-6 * max(1.0, spec.scale(s.real)):
            raise NoConvergenceError(
                f"Newton stalled at |F| = {af:.3g} after {iters} iterations near {s}",
                where=s,
            )
        s, af, iters = _mp_polish(spec, s, residual_tol, iters)
    if cell is not None:
        doubled = Rectangle(
            cell.sigma_min - 0.5 * cell.width,
            cell.sigma_max + 0.5 * cell.width,
            cell.t_min - 0.5 * cell.height,
            cell.t_max + 0.5 * cell.height,
        )
        if not doubled.contains(s):
            raise NoConvergenceError(
                f"refined point {s} escaped the doubled isolating cell {cell}", where=s
            )
    out_cell = cell or Rectangle(s.real - 1e-6, s.real + 1e-6, s.imag - 1e-6, s.imag + 1e-6)
    return ZeroRecord(
        beta=s.real, gamma=s.imag, residual=af, newton_iters=iters, cell=out_cell
    )


def _quadrisect(spec, cell: Rectangle, w: int):
    """Split into 4 equal cells, nudging midlines off zeros; returns child list."""
    eps0 = PERTURB_EPS * (1.0 + abs(cell.t_max))
    offsets = [0.0]
    for k in range(_SPLIT_RETRIES):
        offsets.extend([(2.0 ** k) * eps0, -(2.0 ** k) * eps0])
    last_exc: Exception | None = None
    for off in offsets:
        sig_mid = cell.sigma_min + 0.5 * cell.width + off
        t_mid = cell.t_min + 0.5 * cell.height + off
        if not (cell.sigma_min < sig_mid < cell.sigma_max and cell.t_min < t_mid < cell.t_max):
            continue
        children = [
            Rectangle(cell.sigma_min, sig_mid, cell.t_min, t_mid),
            Rectangle(sig_mid, cell.sigma_max, cell.t_min, t_mid),
            Rectangle(cell.sigma_min, sig_mid, t_mid, cell.t_max),
            Rectangle(sig_mid, cell.sigma_max, t_mid, cell.t_max),
        ]
        try:
            counts = [rectangle_winding(spec, c) for c in children]
        except (ZeroOnPathError, BoundaryZeroError, NonIntegralWindingError) as exc:
            last_exc = exc
            continue
        if sum(counts) != w:
            last_exc = NonIntegralWindingError(
                f"children windings {counts} do not sum to parent {w} for {cell}"
            )
            continue
        return [(c, n) for c, n in zip(children, counts) if n > 0]
    raise NonIntegralWindingError(
        f"could not split {cell} cleanly after midline nudges: {last_exc}"
    )


def locate_zeros(
    spec: PartialSumSpec,
    rect: Rectangle,
    residual_tol: float = RESIDUAL_TOL_DEFAULT,
) -> list[ZeroRecord]:
    """Every zero in ``rect``, isolated by subdivision and Newton-refined.

    The outer boundary is shifted outward by the standard eps policy if it
    happens to pass through a zero.  Records come back sorted by
    (gamma, beta); the record count (with multiplicity) always equals the
    winding number of the searched rectangle.
    """
    total, outer = perturbed_winding(spec, rect, grow=True)
    records: list[ZeroRecord] = []
    stack: list[tuple[Rectangle, int]] = [(outer, total)]
    while stack:
        cell, w = stack.pop()
        if w == 0:
            continue
        if w == 1 and max(cell.width, cell.height) <= _NEWTON_SIDE:
            center = complex(
                cell.sigma_min + 0.5 * cell.width, cell.t_min + 0.5 * cell.height
            )
            try:
                rec = refine(spec, center, residual_tol, cell=cell)
                if cell.contains(rec.point, slack=1e-12 * (1 + abs(rec.gamma))):
                    records.append(rec)
                    continue
            except NoConvergenceError:
                pass
        if min(cell.width, cell.height) <= MIN_CELL_SIDE:
            records.append(_cluster_record(spec, cell, w, residual_tol))
            continue
        stack.extend(_quadrisect(spec, cell, w))
    records.sort(key=lambda r: (r.gamma, r.beta))
    return records


def _cluster_record(spec, cell: Rectangle, w: int, residual_tol: float) -> ZeroRecord:
    """Smallest-cell fallback: report the cluster once, with multiplicity."""
    center = complex(cell.sigma_min + 0.5 * cell.width, cell.t_min + 0.5 * cell.height)
    try:
        rec = refine(spec, center, residual_tol, cell=cell)
        return ZeroRecord(
            beta=rec.beta,
            gamma=rec.gamma,
            residual=rec.residual,
            newton_iters=rec.newton_iters,
            cell=cell,
            multiplicity=w,
        )
    except NoConvergenceError:
        return ZeroRecord(
            beta=center.real,
            gamma=center.imag,
            residual=abs(spec.evaluate(center)),
            newton_iters=0,
            cell=cell,
            multiplicity=w,
        )
