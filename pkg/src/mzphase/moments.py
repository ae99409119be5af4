"""Photon-number moments of the probe arm just after the first splitter.

The generating kernel treats the moment order as one more jet variable, so
<n_b^w> for w up to 4 is a single coefficient extraction. These moments feed
every quantum Fisher information bound downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DegenerateDenominator, ParamOutOfRange
from .jets import JetShape, MultiJet
from .states import ProbeParams, _pasvs_norm_unchecked

RESIDUE_TOL = 1e-9
PSD_TOL = 1e-9


@dataclass(frozen=True)
class MomentSet:
    """First four moments of n_b with derived variances."""

    m1: float
    m2: float
    m3: float
    m4: float
    var_n: float
    var_n2: float


def nb_moment(p: ProbeParams, w: int) -> float:
    """<n_b^w> of the pre-loss probe arm; w = 0..4. Loss and phi are ignored
    (the moments describe the state before either acts)."""
    if not isinstance(w, (int, np.integer)) or not 0 <= w <= 4:
        raise ParamOutOfRange(f"moment order must be an int in [0, 4], got {w!r}")
    w = int(w)
    m = p.m
    cap = max(m, 1)
    shape = JetShape(("t", "tau", "x"), (cap, cap, max(w, 1)))
    t = MultiJet.variable(shape, "t")
    tau = MultiJet.variable(shape, "tau")
    x = MultiJet.variable(shape, "x")
    th = math.tanh(p.r)
    a = p.alpha

    ex = x.exp()
    s = (ex - 1.0) * 0.5
    sp1 = s + 1.0
    m0 = 1.0 - (sp1 * sp1) * th**2
    m0c = m0.extract({"t": 0})
    if abs(m0c) < 1e-9:
        raise DegenerateDenominator(f"moment kernel denominator {abs(m0c):.3e} at x = 0")
    m1_factor = ((s * a) * (a + tau * 1j + (s * (a * th / 2.0)))).exp()
    m2_lin = (s * (-1j * a)) + (ex - s) * (tau - (s * (1j * a * th)))
    half_inv_m0 = m0.recip() * 0.5
    expo = (
        (m2_lin * t) * 2.0 - (m2_lin * m2_lin) * th - (sp1 * sp1) * (t * t) * th
    ) * half_inv_m0
    kernel = m1_factor * m0.sqrt().recip() * expo.exp()
    raw = kernel.extract((m, m, w))
    scale = max(1.0, abs(raw.real))
    if abs(raw.imag) > RESIDUE_TOL * scale:
        raise ConsistencyError(f"moment w={w}: imaginary residue {raw.imag:.3e}")
    return raw.real / (_pasvs_norm_unchecked(p.r, m) * math.cosh(p.r))


def moment_set(p: ProbeParams) -> MomentSet:
    """All four moments with variance of n and of n^2, sanity-checked.

    The Hankel matrix of (1, m1..m4) must be positive semidefinite for a
    genuine photon-number distribution; violations raise ConsistencyError.
    """
    m1, m2, m3, m4 = (nb_moment(p, w) for w in (1, 2, 3, 4))
    var_n = m2 - m1 * m1
    var_n2 = m4 - m2 * m2
    scale = max(1.0, m4)
    hankel = np.array([[1.0, m1, m2], [m1, m2, m3], [m2, m3, m4]])
    lo = float(np.min(np.linalg.eigvalsh(hankel)))
    if lo < -PSD_TOL * scale:
        raise ConsistencyError(f"moment matrix has eigenvalue {lo:.3e}; not a distribution")
    if m1 < -PSD_TOL or var_n < -PSD_TOL * scale or var_n2 < -PSD_TOL * scale:
        raise ConsistencyError("negative mean or variance beyond tolerance")
    return MomentSet(m1, m2, m3, m4, max(var_n, 0.0), max(var_n2, 0.0))


def poisson_reference(nbar: float) -> MomentSet:
    """Moments of a Poisson count with the given mean (closed forms)."""
    m1 = nbar
    m2 = nbar + nbar**2
    m3 = nbar + 3 * nbar**2 + nbar**3
    m4 = nbar + 7 * nbar**2 + 6 * nbar**3 + nbar**4
    return MomentSet(m1, m2, m3, m4, m2 - m1 * m1, m4 - m2 * m2)
