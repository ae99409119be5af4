"""Phase estimation in a lossy Mach-Zehnder interferometer driven by a
coherent state and a photon-added squeezed vacuum.

Subpackages by task:

- jets: truncated multivariate Taylor arithmetic (the derivative engine)
- states: probe-state parameters, normalization constants, energy budgets
- parity: lossy parity signal, classical Fisher information, phase sensitivity
- moments: photon-number moments of the pre-loss probe arm
- qfi_linear / qfi_kerr: quantum Fisher information bounds for linear and
  Kerr phase shifts, ideal and lossy
- oracle: independent brute-force Fock-space engine used for cross-checks
- sweep / cli: parameter sweeps, figure presets, CSV output
"""

__version__ = "0.1.0"

from .errors import (
    BracketExceeded,
    CapTooSmall,
    ConsistencyError,
    CutoffTooSmall,
    DegenerateDenominator,
    DegenerateSignal,
    IndexOutOfCaps,
    InfeasibleTarget,
    JetError,
    ParamOutOfRange,
    SchemaViolation,
    ShapeMismatch,
    SingularConstantTerm,
    SingularNormalEquations,
    SpecInvalid,
    TraceDrift,
    UnitarityDrift,
    UnknownFigure,
    UnknownVariable,
)
from .jets import JetShape, MultiJet
from .moments import MomentSet, moment_set, nb_moment
from .parity import (
    ParitySignal,
    classical_fisher,
    optimal_phase,
    parity_expectation,
    phase_sensitivity,
)
from .qfi_kerr import KerrBound, kerr_cq, kerr_mu_opt, qfi_ideal_kerr, qfi_lossy_kerr
from .qfi_linear import (
    BenchmarkLimits,
    QfiResult,
    benchmark_limits,
    qfi_ideal_linear,
    qfi_lossy_linear,
)
from .states import (
    EnergyReport,
    ProbeParams,
    coherent_fock_amplitudes,
    energy_report,
    pasvs_fock_amplitudes,
    pasvs_mean_photons,
    pasvs_norm,
    solve_r_for_energy,
)
from .sweep import CsvTable, SweepSpec, figure_preset, parse_config, run_sweep

__all__ = [name for name in dir() if not name.startswith("_")]
