"""Exception types with machine-readable codes for the CLI layer."""


class PsletError(Exception):
    """Base class; ``code`` is the stable identifier emitted in JSON output."""

    code = "ERROR"


class NonBinding(PsletError):
    """No harmonic well around the candidate expansion point (w**2 <= 0 or V' <= 0)."""

    code = "NON_BINDING"


class NoRoot(PsletError):
    """The expansion-point condition has no root on the admissible domain."""

    code = "NO_ROOT"


class DegenerateFrequency(PsletError):
    """Effective frequency too small; every substitution step divides by it."""

    code = "DEGENERATE_FREQUENCY"


class InsufficientOrder(PsletError):
    """Hierarchy not solved deep enough for the requested energy order."""

    code = "INSUFFICIENT_ORDER"


class SingularSystem(PsletError):
    """Rational-fit linear system numerically singular; use the raw sum instead."""

    code = "SINGULAR_PADE"


class PoleAtEvaluation(PsletError):
    """Rational approximant has a (near-)pole at the evaluation point."""

    code = "PADE_POLE"


class NoEigenvalueInBracket(PsletError):
    """Shooting solver found no state with the requested node count in the bracket."""

    code = "NO_EIGENVALUE_IN_BRACKET"


class GridTooCoarse(PsletError):
    """Halving the radial step moved the eigenvalue more than the tolerance."""

    code = "GRID_TOO_COARSE"
