"""Exception taxonomy for mzphase.

Contract violations (bad arguments, shapes, configs) derive from ValueError;
numeric/consistency failures discovered at runtime derive from RuntimeError.
"""


class JetError(ValueError):
    """Base for jet-algebra contract violations."""


class UnknownVariable(JetError):
    """A variable name is not part of the jet shape."""


class CapTooSmall(JetError):
    """A truncation order is too small for the requested operation."""


class ShapeMismatch(JetError):
    """Two jets with different shapes were combined."""


class SingularConstantTerm(JetError):
    """recip/sqrt of a jet whose constant term is zero."""


class IndexOutOfCaps(JetError):
    """A derivative multi-index exceeds the jet's truncation orders."""


class ParamOutOfRange(ValueError):
    """A physical parameter is outside its supported range."""


class InfeasibleTarget(ValueError):
    """A requested target value is below the reachable minimum."""


class BracketExceeded(ValueError):
    """A root/target lies outside the search bracket."""


class CutoffTooSmall(ValueError):
    """A Fock-space cutoff leaves more probability in the tail than allowed."""


class DegenerateDenominator(RuntimeError):
    """A kernel denominator lost its constant term; the expansion is invalid."""


class DegenerateSignal(RuntimeError):
    """The detection signal carries no phase information at this point."""


class SingularNormalEquations(RuntimeError):
    """The stationary-point linear system is singular; no closed-form optimum."""


class UnitarityDrift(RuntimeError):
    """A nominally unitary step changed the state norm beyond tolerance."""


class TraceDrift(RuntimeError):
    """A trace-preserving channel changed the trace beyond tolerance."""


class ConsistencyError(RuntimeError):
    """An internal physical-consistency check failed (imaginary residue,
    out-of-range expectation value, indefinite moment matrix, ...)."""


class SpecInvalid(ValueError):
    """A sweep specification is structurally valid but semantically wrong."""


class SchemaViolation(ValueError):
    """A config document does not match the expected schema.

    The message carries a JSONPath-style location ($.key[i]...).
    """


class UnknownFigure(ValueError):
    """No data preset exists for the requested figure number."""
