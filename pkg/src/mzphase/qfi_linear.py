"""Quantum Fisher information for the linear phase shift, ideal and lossy.

Ideal: F_Q = 4 Var(n_b) of the probe arm. Lossy: the purification bound
minimized over the loss-commutation parameter has the closed form
4 eta <n> V / (l V + eta <n>); the numeric check below reproduces it from
the Kraus family directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ParamOutOfRange
from .moments import MomentSet
from .oracle import KrausFamily, cq_from_table, loss_weight_table, probe_marginal
from .states import ProbeParams

DEGENERATE_TOL = 1e-14


@dataclass(frozen=True)
class QfiResult:
    """A Fisher information value with its Cramer-Rao bound.

    regime is "ideal" or "lossy"; degenerate marks a probe with no photon
    number spread at all (fq = 0, bound undefined); fallback marks values
    from a numeric minimization rather than a closed form.
    """

    fq: float
    qcrb: float
    regime: str
    degenerate: bool = False
    fallback: bool = False


@dataclass(frozen=True)
class BenchmarkLimits:
    """Standard sensitivity benchmarks at total mean photon number nbar."""

    nbar: float
    sql: float
    heisenberg: float
    sub_heisenberg: float
    super_heisenberg: float


def _result(fq: float, regime: str, degenerate: bool = False, fallback: bool = False) -> QfiResult:
    qcrb = math.inf if fq <= 0 else 1.0 / math.sqrt(fq)
    return QfiResult(fq=fq, qcrb=qcrb, regime=regime, degenerate=degenerate, fallback=fallback)


def qfi_ideal_linear(ms: MomentSet) -> QfiResult:
    """F_Q = 4 Var(n_b) for a pure probe and unitary phase."""
    fq = 4.0 * ms.var_n
    return _result(fq, "ideal", degenerate=(fq <= DEGENERATE_TOL and ms.m1 <= DEGENERATE_TOL))


def qfi_lossy_linear(ms: MomentSet, loss: float) -> QfiResult:
    """Optimized purification bound under single-arm loss.

    Exactly the ideal value at loss = 0. A probe with neither mean photons
    nor number variance carries no phase information: flagged degenerate.
    """
    if not 0 <= loss < 1:
        raise ParamOutOfRange(f"loss must lie in [0, 1), got {loss}")
    if loss == 0.0:
        res = qfi_ideal_linear(ms)
        return QfiResult(res.fq, res.qcrb, "lossy", degenerate=res.degenerate)
    if ms.m1 <= DEGENERATE_TOL and ms.var_n <= DEGENERATE_TOL:
        return QfiResult(0.0, math.inf, "lossy", degenerate=True)
    eta = 1.0 - loss
    fq = 4.0 * eta * ms.m1 * ms.var_n / (loss * ms.var_n + eta * ms.m1)
    return _result(fq, "lossy")


def benchmark_limits(nbar: float) -> BenchmarkLimits:
    """Shot-noise and Heisenberg-family phase-uncertainty benchmarks."""
    if not (math.isfinite(nbar) and nbar > 0):
        raise ParamOutOfRange(f"nbar must be finite and > 0, got {nbar}")
    return BenchmarkLimits(
        nbar=nbar,
        sql=1.0 / math.sqrt(nbar),
        heisenberg=1.0 / nbar,
        sub_heisenberg=nbar**-1.5,
        super_heisenberg=nbar**-2.0,
    )


def qfi_lossy_numeric_check(p: ProbeParams, gamma_grid=None) -> float:
    """Minimum of the operator-level C_Q over the commutation parameter.

    With no grid given, a 41-point scan of [-2, 2] seeds the search and the
    bracket is pushed outward if the minimum sits on an edge (the bound is
    an upward parabola in gamma, so this always terminates). An explicit
    grid confines the search to its own range. Golden-section refinement
    finishes either way. Deterministic throughout.
    """
    marg = probe_marginal(p, weight=2)
    table = loss_weight_table(marg, p.loss)

    def value(gamma: float) -> float:
        return cq_from_table(table, KrausFamily("linear", p.loss, gamma=gamma))

    auto = gamma_grid is None
    grid = np.linspace(-2.0, 2.0, 41) if auto else np.asarray(gamma_grid, dtype=float)
    if grid.size < 2 or np.any(np.diff(grid) <= 0):
        raise ParamOutOfRange("gamma_grid must be strictly increasing with >= 2 points")
    vals = np.array([value(g) for g in grid])
    best = int(np.argmin(vals))
    step = float(grid[1] - grid[0])
    if auto:
        lo, hi = float(grid[0]), float(grid[-1])
        vlo, vhi = float(vals[0]), float(vals[-1])
        for _ in range(200):
            if best == 0:
                lo -= step
                v = value(lo)
                grid = np.concatenate(([lo], grid))
                vals = np.concatenate(([v], vals))
            elif best == grid.size - 1:
                hi += step
                v = value(hi)
                grid = np.concatenate((grid, [hi]))
                vals = np.concatenate((vals, [v]))
            else:
                break
            best = int(np.argmin(vals))
    a = float(grid[max(best - 1, 0)])
    b = float(grid[min(best + 1, grid.size - 1)])
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    fc, fd = value(c), value(d)
    for _ in range(200):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = value(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = value(d)
        if b - a < 1e-10:
            break
    return float(min(float(vals[best]), fc, fd))
