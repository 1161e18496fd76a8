"""Exception types shared across the package.

Plain ``ValueError`` is raised for malformed arguments (wrong shapes, bad mode
counts).  The classes below mark failures with domain meaning, so callers can
react to them individually: the distillation pipeline retries the witness
search on a ConcentrationError, and the command line maps each class to a
distinct exit code.
"""


class DistillError(Exception):
    """Base class for domain-level failures."""


class PreconditionError(DistillError):
    """Input violates a documented precondition (e.g. NPT required, PPT given)."""


class NumericsError(DistillError):
    """Numerical guard tripped: ill-conditioning, inconsistent invariants,
    or a quantity that should be real/positive came out otherwise."""


class DegeneracyError(NumericsError):
    """Witness de-degeneration failed: no perturbation in the retry schedule
    produced nonzero symplectic skew products on both sides."""


class ConcentrationError(NumericsError):
    """Mode concentration failed: witness support leaked beyond the first
    mode pair, or the reduced two-mode state came out PPT."""


class MeasurementError(NumericsError):
    """Homodyne conditioning attempted on a degenerate quadrature."""
