"""Operator-level reference engine: splitters, loss, phase, and C_Q tables."""

import math

import numpy as np
import pytest

from mzphase.errors import CutoffTooSmall, ParamOutOfRange
from mzphase.oracle import (
    DensityGrid,
    FockGrid,
    KrausFamily,
    apply_beam_splitter,
    apply_loss_channel,
    apply_phase,
    build_input_state,
    cq_from_table,
    default_cutoff,
    loss_weight_table,
    moments_oracle,
    parity_expectation_oracle,
    parity_signal_oracle,
    probe_marginal,
)
from mzphase.states import ProbeParams


def grid_with(cutoff, entries):
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
    for (na, nb), v in entries.items():
        amps[na, nb] = v
    return FockGrid(cutoff, amps)


def test_single_photon_split():
    st = apply_beam_splitter(grid_with(4, {(0, 1): 1.0}), "first")
    s = 1.0 / math.sqrt(2.0)
    assert st.amplitudes[0, 1] == pytest.approx(s, abs=1e-12)
    assert st.amplitudes[1, 0] == pytest.approx(-1j * s, abs=1e-12)
    assert st.norm == pytest.approx(1.0, abs=1e-12)


def test_two_photon_coincidence_cancels():
    st = apply_beam_splitter(grid_with(4, {(1, 1): 1.0}), "first")
    assert abs(st.amplitudes[1, 1]) < 1e-12
    assert abs(st.amplitudes[0, 2]) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert abs(st.amplitudes[2, 0]) == pytest.approx(1 / math.sqrt(2), abs=1e-12)


def test_second_splitter_inverts_first():
    rng = np.random.default_rng(20240917)
    cutoff = 12
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
    # random support on complete sectors only
    for total in range(cutoff + 1):
        for na in range(total + 1):
            amps[na, total - na] = rng.normal() + 1j * rng.normal()
    amps /= np.linalg.norm(amps)
    st = FockGrid(cutoff, amps)
    back = apply_beam_splitter(apply_beam_splitter(st, "first"), "second")
    assert np.max(np.abs(back.amplitudes - amps)) < 1e-12


def test_splitter_rejects_incomplete_sector_mass():
    st = grid_with(3, {(3, 3): 1.0})
    with pytest.raises(CutoffTooSmall):
        apply_beam_splitter(st, "first")
    with pytest.raises(ParamOutOfRange):
        apply_beam_splitter(grid_with(3, {(0, 1): 1.0}), "sideways")


@pytest.mark.parametrize("kind", ["linear", "kerr"])
@pytest.mark.parametrize("loss", [0.0, 0.1, 0.5, 0.9])
def test_kraus_completeness(kind, loss):
    fam = KrausFamily(kind, loss, gamma=-0.7, mu1=-0.5, mu2=-0.3)
    assert fam.completeness_defect(25) < 1e-9


def test_kraus_family_validation():
    with pytest.raises(ParamOutOfRange):
        KrausFamily("cubic", 0.1)
    with pytest.raises(ParamOutOfRange):
        KrausFamily("linear", 1.0)


def test_loss_on_single_photon():
    l = 0.3
    rho = apply_loss_channel(grid_with(3, {(0, 1): 1.0}), l)
    marg = rho.b_marginal()
    assert marg[0] == pytest.approx(l, abs=1e-14)
    assert marg[1] == pytest.approx(1.0 - l, abs=1e-14)
    assert rho.trace() == pytest.approx(1.0, abs=1e-12)


def test_loss_keeps_coherent_state_coherent():
    from mzphase.states import coherent_fock_amplitudes

    beta, l = 1.3, 0.4
    cutoff = 31
    cb = coherent_fock_amplitudes(beta, cutoff)
    amps = np.zeros((cutoff + 1, cutoff + 1), dtype=np.complex128)
    amps[0, :] = cb
    rho = apply_loss_channel(FockGrid(cutoff, amps), l)
    want = np.abs(coherent_fock_amplitudes(beta * math.sqrt(1 - l), cutoff)) ** 2
    assert np.max(np.abs(rho.b_marginal() - want)) < 1e-10


def test_density_matrix_is_physical():
    p = ProbeParams(alpha=1.0, r=0.4, m=1, loss=0.2)
    st = build_input_state(p, 32)
    st = FockGrid(32, st.amplitudes / st.norm)
    rho = apply_loss_channel(st, p.loss)
    mat = rho.matrix()
    assert np.max(np.abs(mat - mat.conj().T)) < 1e-12
    assert np.trace(mat).real == pytest.approx(rho.trace(), abs=1e-12)
    assert np.trace(mat).real == pytest.approx(1.0, abs=1e-9)
    assert np.linalg.eigvalsh(mat).min() > -1e-9


def test_dense_matrix_refuses_large_cutoff():
    with pytest.raises(ParamOutOfRange):
        DensityGrid(41, []).matrix()


def test_phase_roundtrip_and_kinds():
    st = grid_with(4, {(0, 1): 0.6, (1, 0): 0.8})
    back = apply_phase(apply_phase(st, 0.37, "linear"), -0.37, "linear")
    assert np.max(np.abs(back.amplitudes - st.amplitudes)) < 1e-15
    lin = apply_phase(grid_with(4, {(0, 2): 1.0}), 0.5, "linear")
    ker = apply_phase(grid_with(4, {(0, 2): 1.0}), 0.5, "kerr")
    assert lin.amplitudes[0, 2] == pytest.approx(np.exp(1j), abs=1e-15)
    assert ker.amplitudes[0, 2] == pytest.approx(np.exp(2j), abs=1e-15)
    with pytest.raises(ParamOutOfRange):
        apply_phase(st, 0.1, "cubic")


def test_default_cutoff_policy():
    p = ProbeParams(alpha=2.0, r=0.5, m=2)
    c0 = default_cutoff(p)
    c4 = default_cutoff(p, weight=4)
    assert c0 % 8 == 0 and c0 >= p.m + 2
    assert c4 >= c0  # heavier tail weighting never shrinks the grid


@pytest.mark.parametrize(
    "alpha,r,m,l,phi",
    [(1.0, 0.5, 1, 0.0, 0.3), (2.0, 0.5, 2, 0.2, 0.7)],
)
def test_parity_oracle_converged_in_cutoff(alpha, r, m, l, phi):
    p = ProbeParams(alpha=alpha, r=r, m=m, loss=l, phi=phi)
    base = default_cutoff(p)
    v1 = parity_expectation_oracle(p, cutoff=base)
    v2 = parity_expectation_oracle(p, cutoff=2 * base)
    assert abs(v1 - v2) < 1e-9


def test_moments_oracle_converged_in_cutoff():
    p = ProbeParams(alpha=1.5, r=0.6, m=2)
    base = default_cutoff(p, weight=4)
    for w in (1, 4):
        v1 = moments_oracle(p, w, cutoff=base)
        v2 = moments_oracle(p, w, cutoff=2 * base)
        assert abs(v1 - v2) < 1e-9 * max(1.0, abs(v2))


@pytest.mark.parametrize(
    "alpha,r,m,l,phi",
    [(2.0, 0.5, 1, 0.0, 0.3), (1.0, 1.0, 3, 0.3, 0.7), (2.0, 1.0, 0, 0.3, 0.0)],
)
def test_parity_signal_derivatives_match_analytic(alpha, r, m, l, phi):
    from mzphase.parity import parity_expectation

    p = ProbeParams(alpha=alpha, r=r, m=m, loss=l, phi=phi)
    f, d1, d2 = parity_signal_oracle(p)
    sig = parity_expectation(p)
    assert f == pytest.approx(sig.value, abs=1e-9)
    assert d1 == pytest.approx(sig.dvalue, abs=1e-9)
    assert d2 == pytest.approx(sig.ddvalue, abs=1e-9)


def test_parity_signal_value_consistent_with_plain_oracle():
    p = ProbeParams(alpha=1.5, r=0.5, m=2, loss=0.1, phi=0.4)
    f, _, _ = parity_signal_oracle(p)
    assert f == pytest.approx(parity_expectation_oracle(p), abs=1e-12)


def test_cq_table_matches_direct_variance():
    # with gamma = 0 the linear generator is the surviving photon number,
    # so C_Q reduces to 4 Var(n_surv) under the binomial thinning
    p = ProbeParams(alpha=1.0, r=0.5, m=1, loss=0.3)
    marg = probe_marginal(p, weight=2)
    table = loss_weight_table(marg, p.loss)
    got = cq_from_table(table, KrausFamily("linear", p.loss, gamma=0.0))
    eta = 1.0 - p.loss
    n = np.arange(marg.size)
    mean_in = float(np.dot(marg, n))
    m2_in = float(np.dot(marg, n * n))
    mean = eta * mean_in
    second = eta**2 * (m2_in - mean_in) + eta * mean_in
    assert got == pytest.approx(4.0 * (second - mean**2), rel=1e-12)


def test_loss_weight_table_normalized():
    p = ProbeParams(alpha=1.0, r=0.5, m=1, loss=0.25)
    marg = probe_marginal(p, weight=2)
    table = loss_weight_table(marg, p.loss)
    assert float(np.sum(table.weight)) == pytest.approx(1.0, abs=1e-12)
    assert np.all(table.survived + table.lost >= 0)
