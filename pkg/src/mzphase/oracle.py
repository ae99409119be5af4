"""Independent brute-force Fock-space engine.

Everything here works on explicit two-mode photon-number grids: the input
product state is built from truncated Fock amplitude vectors, beam splitters
act exactly on each total-photon sector (they conserve n_a + n_b, so each
sector is a small orthogonal mixing computed by spectral decomposition),
loss on the probe arm is expanded into its Kraus branches, and phases are
diagonal. No generating-function shortcuts: this is the cross-check engine
for the analytic modules, sharing nothing with them but the state builders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import gammaln

from .errors import (
    ConsistencyError,
    CutoffTooSmall,
    ParamOutOfRange,
    TraceDrift,
    UnitarityDrift,
)
from .states import (
    ProbeParams,
    coherent_fock_amplitudes,
    pasvs_fock_amplitudes,
    pasvs_norm,
)

# Relative probability mass allowed outside the retained total-photon sectors.
SECTOR_TOL = 1e-11
# Matrix cutoff above which the oracle refuses to run (cost grows like N^4).
SECTOR_LIMIT = 600


@dataclass
class FockGrid:
    """Pure two-mode state on a square photon-number grid.

    amplitudes[n_a, n_b], both indices 0..cutoff, row-major with n_a as the
    slow index.
    """

    cutoff: int
    amplitudes: np.ndarray

    def __post_init__(self):
        d = self.cutoff + 1
        if self.amplitudes.shape != (d, d):
            raise ConsistencyError(
                f"amplitude grid {self.amplitudes.shape} does not match cutoff {self.cutoff}"
            )

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def b_marginal(self) -> np.ndarray:
        return np.sum(np.abs(self.amplitudes) ** 2, axis=0)


@dataclass
class DensityGrid:
    """Mixed two-mode state stored as an ensemble of unnormalized pure branches.

    Each branch is an amplitude grid like FockGrid's; its squared norm is the
    branch weight. Storing branches instead of a dense matrix keeps large
    cutoffs tractable while remaining exact.
    """

    cutoff: int
    branches: list = field(default_factory=list)

    def trace(self) -> float:
        return float(sum(np.vdot(b, b).real for b in self.branches))

    def b_marginal(self) -> np.ndarray:
        out = np.zeros(self.cutoff + 1)
        for b in self.branches:
            out += np.sum(np.abs(b) ** 2, axis=0)
        return out

    def matrix(self) -> np.ndarray:
        """Dense density matrix in the flattened (n_a major) basis.

        Only for small cutoffs; the dense form is quadratic in grid size.
        """
        if self.cutoff > 40:
            raise ParamOutOfRange(
                f"dense density matrix limited to cutoff <= 40, got {self.cutoff}"
            )
        d = (self.cutoff + 1) ** 2
        rho = np.zeros((d, d), dtype=np.complex128)
        for b in self.branches:
            v = b.ravel()
            rho += np.outer(v, v.conj())
        return rho


@dataclass(frozen=True)
class KrausFamily:
    """Loss-channel Kraus family commuted past a phase shift.

    kind "linear": branch j imprints phase exponent (n - gamma * j).
    kind "kerr": branch j imprints n^2 - 2*mu1*n*j - mu2*j^2.
    Here n is the photon number surviving the loss.
    """

    kind: str
    loss: float
    gamma: float = 0.0
    mu1: float = 0.0
    mu2: float = 0.0

    def __post_init__(self):
        if self.kind not in ("linear", "kerr"):
            raise ParamOutOfRange(f"kind must be 'linear' or 'kerr', got {self.kind!r}")
        if not 0 <= self.loss < 1:
            raise ParamOutOfRange(f"loss must lie in [0, 1), got {self.loss}")

    def generator(self, n, j):
        """Phase exponent imprinted on branch j at surviving photon number n."""
        if self.kind == "linear":
            return n - self.gamma * j
        return n * n - 2.0 * self.mu1 * n * j - self.mu2 * j * j

    def operator(self, j: int, nmax: int, phi: float = 0.0) -> np.ndarray:
        """Dense single-mode matrix of branch j on Fock levels 0..nmax."""
        out = np.zeros((nmax + 1, nmax + 1), dtype=np.complex128)
        if self.loss == 0.0 and j > 0:
            return out
        eta = 1.0 - self.loss
        for k in range(j, nmax + 1):
            n = k - j
            logw = 0.5 * (
                j * math.log(self.loss) if j else 0.0
            ) - 0.5 * gammaln(j + 1) + 0.5 * n * math.log(eta) + 0.5 * (
                gammaln(k + 1) - gammaln(n + 1)
            )
            out[n, k] = math.exp(logw) * np.exp(1j * phi * self.generator(n, j))
        return out

    def completeness_defect(self, nmax: int) -> float:
        """max-entry deviation of sum_j K_j^dag K_j from the identity."""
        acc = np.zeros((nmax + 1, nmax + 1), dtype=np.complex128)
        for j in range(nmax + 1):
            op = self.operator(j, nmax)
            acc += op.conj().T @ op
        return float(np.max(np.abs(acc - np.eye(nmax + 1))))


# -- beam splitter ----------------------------------------------------------


@lru_cache(maxsize=4)
def _bs_blocks(cutoff: int):
    """Per-sector 50:50 beam-splitter matrices exp(-i pi/4 (a^dag b + a b^dag)).

    Sector N (total photons) has basis |n_a, N - n_a>, n_a = 0..N; the
    coupling operator is real symmetric tridiagonal there, so the block is
    built from its spectral decomposition. The second splitter's block is
    the entrywise conjugate.
    """
    blocks = []
    for total in range(cutoff + 1):
        na = np.arange(total + 1)
        off = np.sqrt((na[:-1] + 1.0) * (total - na[:-1]))
        j_op = np.diag(off, 1) + np.diag(off, -1)
        vals, vecs = np.linalg.eigh(j_op)
        u = (vecs * np.exp(-1j * (np.pi / 4) * vals)) @ vecs.T
        defect = np.max(np.abs(u.conj().T @ u - np.eye(total + 1)))
        if defect >= 1e-10:
            raise UnitarityDrift(f"sector {total} block unitarity defect {defect:.3e}")
        blocks.append(u)
    return blocks


def _apply_bs_array(arr: np.ndarray, cutoff: int, second: bool) -> np.ndarray:
    blocks = _bs_blocks(cutoff)
    out = arr.copy()
    for total in range(cutoff + 1):
        na = np.arange(total + 1)
        vec = arr[na, total - na]
        u = blocks[total]
        if second:
            u = u.conj()
        out[na, total - na] = u @ vec
    return out


def _sector_mass_check(arr: np.ndarray, cutoff: int):
    """Probability mass outside total-photon sectors 0..cutoff must be negligible."""
    flipped = arr[::-1, :]
    mass = 0.0
    for k in range(1, cutoff + 1):  # diagonals with n_a + n_b > cutoff
        d = np.diagonal(flipped, offset=k)
        mass += float(np.vdot(d, d).real)
    total = float(np.vdot(arr, arr).real)
    if mass > 1e-12 * max(total, 1e-300):
        raise CutoffTooSmall(
            f"state has {mass:.3e} of {total:.3e} outside retained sectors; increase cutoff"
        )


def apply_beam_splitter(state, which: str):
    """Apply the first or second 50:50 splitter, exactly per photon sector.

    Requires the state's support to sit in complete sectors (n_a + n_b up to
    the grid cutoff); mass outside is an error. Pure states are renormalized
    if the norm drifted by less than 1e-9, else UnitarityDrift.
    """
    if which not in ("first", "second"):
        raise ParamOutOfRange(f"which must be 'first' or 'second', got {which!r}")
    second = which == "second"
    if isinstance(state, FockGrid):
        _sector_mass_check(state.amplitudes, state.cutoff)
        before = state.norm
        out = _apply_bs_array(state.amplitudes, state.cutoff, second)
        after = float(np.linalg.norm(out))
        drift = abs(after - before)
        if drift >= 1e-9 * max(before, 1e-300):
            raise UnitarityDrift(f"norm drifted by {drift:.3e} across the splitter")
        if after > 0:
            out *= before / after
        return FockGrid(state.cutoff, out)
    if isinstance(state, DensityGrid):
        before = state.trace()
        branches = []
        for b in state.branches:
            _sector_mass_check(b, state.cutoff)
            branches.append(_apply_bs_array(b, state.cutoff, second))
        out = DensityGrid(state.cutoff, branches)
        drift = abs(out.trace() - before)
        if drift >= 1e-9 * max(before, 1e-300):
            raise UnitarityDrift(f"trace drifted by {drift:.3e} across the splitter")
        return out
    raise ParamOutOfRange(f"unsupported state type {type(state).__name__}")


# -- loss and phase ---------------------------------------------------------


def _loss_branches(arr: np.ndarray, l: float, total_in: float):
    """Kraus branches of single-arm loss on the b mode of one pure branch."""
    size = arr.shape[1]
    eta = 1.0 - l
    branches = []
    acc = float(np.vdot(arr, arr).real)
    cum = 0.0
    for j in range(size):
        kk = np.arange(size - j)
        logw2 = (
            (j * math.log(l) if j else 0.0)
            - gammaln(j + 1)
            + kk * math.log(eta)
            + gammaln(kk + j + 1)
            - gammaln(kk + 1)
        )
        pref = np.exp(0.5 * logw2)
        branch = np.zeros_like(arr)
        branch[:, : size - j] = arr[:, j:] * pref[None, :]
        w = float(np.vdot(branch, branch).real)
        branches.append(branch)
        cum += w
        if acc - cum < 1e-14 * max(total_in, 1e-300):
            break
    return branches, cum


def apply_loss_channel(state, l: float) -> DensityGrid:
    """Photon loss with survival 1 - l on the probe (b) arm."""
    if not 0 <= l < 1:
        raise ParamOutOfRange(f"loss must lie in [0, 1), got {l}")
    if isinstance(state, FockGrid):
        in_branches = [state.amplitudes]
        cutoff = state.cutoff
        total_in = state.norm ** 2
    elif isinstance(state, DensityGrid):
        in_branches = state.branches
        cutoff = state.cutoff
        total_in = state.trace()
    else:
        raise ParamOutOfRange(f"unsupported state type {type(state).__name__}")
    out = []
    cum = 0.0
    for b in in_branches:
        branches, got = _loss_branches(b, l, total_in)
        out.extend(branches)
        cum += got
    if abs(cum - total_in) > 1e-9 * max(total_in, 1e-300):
        raise TraceDrift(f"loss channel trace moved from {total_in!r} to {cum!r}")
    return DensityGrid(cutoff, out)


def apply_phase(state, phi: float, kind: str = "linear"):
    """Diagonal phase on the b mode: exp(i phi n_b) or exp(i phi n_b^2)."""
    if kind == "linear":
        expo = lambda n: n  # noqa: E731
    elif kind == "kerr":
        expo = lambda n: n * n  # noqa: E731
    else:
        raise ParamOutOfRange(f"kind must be 'linear' or 'kerr', got {kind!r}")
    if isinstance(state, FockGrid):
        n = np.arange(state.cutoff + 1)
        return FockGrid(state.cutoff, state.amplitudes * np.exp(1j * phi * expo(n))[None, :])
    if isinstance(state, DensityGrid):
        n = np.arange(state.cutoff + 1)
        f = np.exp(1j * phi * expo(n))[None, :]
        return DensityGrid(state.cutoff, [b * f for b in state.branches])
    raise ParamOutOfRange(f"unsupported state type {type(state).__name__}")


# -- input construction and cutoff policy ------------------------------------


def build_input_state(p: ProbeParams, cutoff: int) -> FockGrid:
    """Coherent (a) x photon-added squeezed vacuum (b) on a square grid."""
    ca = coherent_fock_amplitudes(p.alpha, cutoff)
    cb = pasvs_fock_amplitudes(p.r, p.m, cutoff)
    amps = np.outer(ca, cb).astype(np.complex128)
    return FockGrid(cutoff, amps)


def _pasvs_probs(r: float, m: int, length: int) -> np.ndarray:
    probs = np.zeros(length)
    th, sech = math.tanh(r), 1.0 / math.cosh(r)
    s2n = math.sqrt(sech)
    n = 0
    while 2 * n + m < length:
        k = 2 * n
        c2 = s2n * s2n * math.prod(range(k + 1, k + m + 1))
        probs[k + m] = c2
        s2n *= th * math.sqrt((k + 1) * (k + 2)) / (k + 2)
        n += 1
    return probs / pasvs_norm(r, m)


def _coherent_probs(alpha: float, length: int) -> np.ndarray:
    n = np.arange(length)
    logp = -alpha * alpha + n * (2.0 * math.log(alpha) if alpha > 0 else 0.0) - gammaln(n + 1)
    if alpha == 0.0:
        out = np.zeros(length)
        out[0] = 1.0
        return out
    return np.exp(logp)


def default_cutoff(p: ProbeParams, weight: int = 0) -> int:
    """Sector cutoff from the exact total-photon distribution of the input.

    Picks the smallest N with sum_{total > N} total^weight q_total below
    SECTOR_TOL of the full weighted mass, where q is the convolution of the
    two single-mode photon distributions. Because the splitters conserve
    total photon number and n_b <= total, this bounds the truncation error
    of any later observable growing at most like n_b^weight.
    """
    length = 1024
    while True:
        pa = _coherent_probs(p.alpha, length)
        pb = _pasvs_probs(p.r, p.m, length)
        if pa[-1] < 1e-16 and pb[-1] < 1e-16:
            break
        length *= 2
        if length > 16384:
            raise CutoffTooSmall("input photon distributions too wide for the oracle")
    q = np.convolve(pa, pb)
    totals = np.arange(q.size, dtype=float)
    wq = q * totals**weight
    total_mass = float(np.sum(wq))
    tail = np.cumsum(wq[::-1])[::-1]
    ok = np.nonzero(tail <= SECTOR_TOL * total_mass)[0]
    if ok.size == 0:
        raise CutoffTooSmall("no cutoff satisfies the sector tail budget")
    nc = int(ok[0])  # first index whose own-and-above tail is small enough
    nc = max(nc, p.m + 2, 8)
    nc = (nc + 7) // 8 * 8  # quantize for block-cache reuse
    if nc > SECTOR_LIMIT:
        raise CutoffTooSmall(
            f"required sector cutoff {nc} exceeds the oracle limit {SECTOR_LIMIT}"
        )
    return nc


def _prepared_after_first_splitter(p: ProbeParams, cutoff: int) -> FockGrid:
    state = build_input_state(p, cutoff)
    arr = state.amplitudes.copy()
    # clip to complete sectors; the discarded corner carries at most the
    # sector tail budget and the splitter then acts exactly
    flipped = arr[::-1, :]
    for k in range(1, cutoff + 1):
        np.fill_diagonal(flipped[:, k:], 0.0)
    nrm = float(np.linalg.norm(arr))
    if 1.0 - nrm * nrm > 1e-9:
        raise CutoffTooSmall(f"sector clip removed {1 - nrm * nrm:.3e} probability")
    arr /= nrm
    return apply_beam_splitter(FockGrid(cutoff, arr), "first")


# -- pipeline observables -----------------------------------------------------


def parity_expectation_oracle(p: ProbeParams, cutoff: int | None = None) -> float:
    """Parity of the b mode at the output, via the full state pipeline."""
    nc = default_cutoff(p, weight=0) if cutoff is None else cutoff
    after_bs1 = _prepared_after_first_splitter(p, nc)
    lossy = apply_loss_channel(after_bs1, p.loss)
    phased = apply_phase(lossy, p.phi, "linear")
    final = apply_beam_splitter(phased, "second")
    signs = np.where(np.arange(nc + 1) % 2 == 0, 1.0, -1.0)
    return float(np.dot(final.b_marginal(), signs))


def parity_signal_oracle(
    p: ProbeParams, cutoff: int | None = None
) -> tuple[float, float, float]:
    """Output parity with its first two exact phase derivatives.

    The phase enters each pure branch as v(phi) = e^{i phi n_b} u, so
    v' = i n_b v and v'' = -n_b^2 v; pushing v, v', v'' through the second
    splitter gives the derivatives without finite differencing:
    f' = 2 Re<w0|P|w1>, f'' = 2 Re<w0|P|w2> + 2 <w1|P|w1>.
    """
    nc = default_cutoff(p, weight=0) if cutoff is None else cutoff
    after_bs1 = _prepared_after_first_splitter(p, nc)
    lossy = apply_loss_channel(after_bs1, p.loss)
    n = np.arange(nc + 1, dtype=float)[None, :]
    signs = np.where(np.arange(nc + 1) % 2 == 0, 1.0, -1.0)[None, :]
    f = d1 = d2 = 0.0
    for u in lossy.branches:
        v0 = u * np.exp(1j * p.phi * n)
        v1 = 1j * n * v0
        v2 = -(n * n) * v0
        w0 = _apply_bs_array(v0, nc, second=True)
        w1 = _apply_bs_array(v1, nc, second=True)
        w2 = _apply_bs_array(v2, nc, second=True)
        pw0 = signs * w0
        f += float(np.sum((pw0.conj() * w0).real))
        d1 += 2.0 * float(np.sum((pw0.conj() * w1).real))
        d2 += 2.0 * float(np.sum((pw0.conj() * w2).real)) + 2.0 * float(
            np.sum((signs * w1.conj() * w1).real)
        )
    return f, d1, d2


def moments_oracle(p: ProbeParams, w: int, cutoff: int | None = None) -> float:
    """<n_b^w> just after the first splitter (pre-loss probe arm)."""
    if not isinstance(w, (int, np.integer)) or w < 0:
        raise ParamOutOfRange(f"moment order must be a non-negative int, got {w!r}")
    nc = default_cutoff(p, weight=int(w)) if cutoff is None else cutoff
    after_bs1 = _prepared_after_first_splitter(p, nc)
    marg = after_bs1.b_marginal()
    n = np.arange(nc + 1, dtype=float)
    return float(np.dot(marg, n**w))


def probe_marginal(p: ProbeParams, weight: int = 2, cutoff: int | None = None) -> np.ndarray:
    """Photon-number distribution of the probe arm just after the first splitter."""
    nc = default_cutoff(p, weight=weight) if cutoff is None else cutoff
    return _prepared_after_first_splitter(p, nc).b_marginal()


@dataclass(frozen=True)
class LossWeightTable:
    """Joint distribution of (surviving photons, lost photons) under the channel.

    Rows enumerate (k - j, j) with weight P_k * Binom(k, j) l^j eta^(k-j);
    j sums are cut adaptively once the rest of a row cannot move any fourth-
    degree phase generator by one part in 1e14.
    """

    survived: np.ndarray
    lost: np.ndarray
    weight: np.ndarray


def loss_weight_table(marginal: np.ndarray, loss: float) -> LossWeightTable:
    if not 0 <= loss < 1:
        raise ParamOutOfRange(f"loss must lie in [0, 1), got {loss}")
    eta = 1.0 - loss
    survived = []
    lost = []
    weight = []
    for k in range(marginal.size):
        pk = float(marginal[k])
        if pk == 0.0:
            continue
        wj = eta**k
        rem = 1.0
        gmax2 = float(k) ** 8 + 1.0  # kerr generator is O(k^2); squared and padded
        for j in range(k + 1):
            survived.append(k - j)
            lost.append(j)
            weight.append(pk * wj)
            rem -= wj
            if rem * gmax2 < 1e-14:
                break
            wj = wj * (k - j) / (j + 1) * (loss / eta)
    return LossWeightTable(
        np.array(survived, dtype=float),
        np.array(lost, dtype=float),
        np.array(weight, dtype=float),
    )


def cq_from_table(table: LossWeightTable, family: KrausFamily) -> float:
    """C_Q of a diagonal Kraus family from the precomputed weight table."""
    g = family.generator(table.survived, table.lost)
    h1 = float(np.dot(table.weight, g * g))
    h2 = float(np.dot(table.weight, g))
    return 4.0 * (h1 - h2 * h2)


def cq_numeric(p: ProbeParams, family: KrausFamily, cutoff: int | None = None) -> float:
    """Purification bound C_Q evaluated directly from the Kraus family.

    Both designated families are diagonal in the b photon-number basis, so
    only the post-splitter b marginal enters; the j sums are finite.
    """
    if abs(family.loss - p.loss) > 1e-15:
        raise ParamOutOfRange(
            f"family loss {family.loss} does not match probe loss {p.loss}"
        )
    wdeg = 2 if family.kind == "linear" else 4
    marg = probe_marginal(p, weight=wdeg, cutoff=cutoff)
    return cq_from_table(loss_weight_table(marg, family.loss), family)
