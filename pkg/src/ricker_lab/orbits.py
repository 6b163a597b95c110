"""Orbit simulation, attractor classification, and eigenvalue-modulus scans."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional

import numpy as np

from .constant import solve_equilibrium
from .errors import NoCrossing, OrbitOverflow
from .model import ModelParams
from .periodic import solve_two_cycle

_OVERFLOW_GUARD = 1e300


def simulate(params: ModelParams, x0: float, x_minus1: float, n_steps: int) -> np.ndarray:
    """The orbit terms x_1 .. x_{n_steps} from initial data (x0, x_{-1}).

    Deterministic; raises OrbitOverflow (with the offending step index) when a
    term exceeds the 1e300 guard.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    if x0 < 0.0 or x_minus1 < 0.0:
        raise ValueError("initial states must be non-negative")
    r = params.r
    stocking = params.stocking
    p = params.p
    out = np.empty(n_steps)
    cur, prev = x0, x_minus1
    for n in range(n_steps):
        nxt = cur * math.exp(r - prev) + stocking[n % p]
        if not math.isfinite(nxt) or nxt > _OVERFLOW_GUARD:
            raise OrbitOverflow(step=n + 1, value=nxt)
        out[n] = nxt
        prev, cur = cur, nxt
    return out


class AttractorKind(str, Enum):
    EQUILIBRIUM = "Equilibrium"
    CYCLE = "Cycle"
    INVARIANT_CURVE = "InvariantCurve"
    UNRESOLVED = "Unresolved"


@dataclass(frozen=True)
class OrbitResult:
    """Post-transient window with its attractor label.

    samples holds (x_n, x_{n-1}) pairs for the window.  For a cycle, `points`
    lists one period in orbit order; for an equilibrium, `value` is the fixed
    point estimate.
    """

    kind: AttractorKind
    samples: np.ndarray
    transient_used: int
    tolerance: float
    value: Optional[float] = None
    period: Optional[int] = None
    points: Optional[tuple[float, ...]] = None


def _local_spectral_data(params: ModelParams):
    """(spectral radius, has complex pair) at the equilibrium or 2-cycle."""
    if params.p == 1:
        rep = solve_equilibrium(params)
        lam = rep.eigenvalues
    elif params.p == 2:
        rep2 = solve_two_cycle(params)
        lam = rep2.eigenvalues
    else:
        return None
    radius = max(abs(l) for l in lam)
    return radius, lam[0].imag != 0.0


def classify_attractor(
    params: ModelParams,
    x0: float,
    x_minus1: float,
    transient: int = 10_000,
    window: int = 4096,
    tol: float = 1e-6,
    max_period: int = 64,
) -> OrbitResult:
    """Label the long-run behavior of one orbit.

    After dropping `transient` steps: an equilibrium when the window collapses
    to a point; otherwise the smallest period k <= max_period matching the
    window shift within tol; otherwise, when the orbit stays bounded and the
    local eigenvalue pair at the nearest equilibrium/2-cycle is complex with
    modulus above one, an invariant curve; else unresolved.  The invariant
    curve label is heuristic and is never consumed by the certifiers.
    """
    if window < 2 * max_period:
        raise ValueError("window must be at least twice max_period")
    orbit = simulate(params, x0, x_minus1, transient + window)
    w = orbit[transient:]
    prev = np.concatenate(([x0 if transient == 0 else orbit[transient - 1]], w[:-1]))
    samples = np.column_stack([w, prev])

    if w.max() - w.min() < tol:
        return OrbitResult(
            kind=AttractorKind.EQUILIBRIUM, samples=samples,
            transient_used=transient, tolerance=tol,
            value=float(w.mean()), period=1,
        )
    for k in range(2, max_period + 1):
        if np.max(np.abs(w[k:] - w[:-k])) < tol:
            return OrbitResult(
                kind=AttractorKind.CYCLE, samples=samples,
                transient_used=transient, tolerance=tol,
                period=k, points=tuple(float(v) for v in w[-k:]),
            )
    spectral = _local_spectral_data(params)
    if spectral is not None:
        radius, complex_pair = spectral
        if complex_pair and radius > 1.0:
            return OrbitResult(
                kind=AttractorKind.INVARIANT_CURVE, samples=samples,
                transient_used=transient, tolerance=tol,
            )
    return OrbitResult(
        kind=AttractorKind.UNRESOLVED, samples=samples,
        transient_used=transient, tolerance=tol,
    )


@dataclass(frozen=True)
class CrossingReport:
    """Location of a unit-circle crossing of the leading eigenvalue pair."""

    s_lo: float
    s_hi: float
    s_star: float
    modulus: float
    argument: float
    complex_pair: bool
    kind: str  # "equilibrium" or "two-cycle"


def _modulus_at(params: ModelParams) -> tuple[float, complex]:
    if params.p == 1:
        rep = solve_equilibrium(params)
        lam = rep.eigenvalues
        kind = "equilibrium"
    elif params.p == 2:
        rep2 = solve_two_cycle(params)
        lam = rep2.eigenvalues
        kind = "two-cycle"
    else:
        raise ValueError("scans support p = 1 and p = 2 only")
    lead = max(lam, key=abs)
    return abs(lead), lead


def neimark_sacker_scan(
    family: Callable[[float], ModelParams],
    s_lo: float,
    s_hi: float,
    steps: int = 101,
    refine_width: float = 1e-8,
) -> CrossingReport:
    """Bracket and bisect the first unit-modulus crossing along a family.

    `family` maps the scan parameter s to model parameters; the scanned
    quantity is the spectral radius of the equilibrium (p = 1) or composed
    2-cycle Jacobian (p = 2).  Raises NoCrossing when the radius stays on one
    side over the whole grid.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    grid = np.linspace(s_lo, s_hi, steps)
    vals = []
    for s in grid:
        m, _ = _modulus_at(family(float(s)))
        vals.append(m - 1.0)
    bracket = None
    for i in range(steps - 1):
        if vals[i] == 0.0 or vals[i] * vals[i + 1] < 0.0:
            bracket = (float(grid[i]), float(grid[i + 1]))
            break
    if bracket is None:
        raise NoCrossing(
            f"eigenvalue modulus stays on one side of 1 over [{s_lo}, {s_hi}]"
        )
    lo, hi = bracket
    flo = _modulus_at(family(lo))[0] - 1.0
    while hi - lo > refine_width:
        mid = 0.5 * (lo + hi)
        fm = _modulus_at(family(mid))[0] - 1.0
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    s_star = 0.5 * (lo + hi)
    params = family(s_star)
    modulus, lead = _modulus_at(params)
    kind = "equilibrium" if params.p == 1 else "two-cycle"
    return CrossingReport(
        s_lo=bracket[0],
        s_hi=bracket[1],
        s_star=s_star,
        modulus=modulus,
        argument=math.atan2(abs(lead.imag), lead.real),
        complex_pair=lead.imag != 0.0,
        kind=kind,
    )
