"""Exception hierarchy.

Numerical failures (deflation, positivity, breakdown, ...) are kept apart
from configuration and input-validation errors so the batch driver can map
them onto distinct exit codes.
"""


class SorfError(Exception):
    """Base class for all library errors."""


class ConfigError(SorfError):
    """Invalid configuration document or parameter combination."""


class RuleValidationError(SorfError):
    """An imported quadrature rule failed validation."""


class NumericalError(SorfError):
    """Base class for runtime numerical failures."""


class DegenerateRotationError(NumericalError):
    """A plane rotation was requested for the zero vector."""


class DeflationError(NumericalError):
    """Both subdiagonal entries of a pencil position (nearly) vanished."""


class IllPosedMeasureError(NumericalError):
    """A quadrature pole lies inside the support of the measure."""


class PositivityError(NumericalError):
    """A quadrature weight or recurrence norm turned out nonpositive."""


class SpectrumOverlapError(NumericalError):
    """A requested pole coincides with a node of the discrete measure."""


class KrylovBreakdownError(NumericalError):
    """The rational Arnoldi iteration lost rank or orthogonality."""


class PoleCollisionError(NumericalError):
    """A rational function was evaluated too close to one of its poles."""


class AccuracyError(NumericalError):
    """A self-convergence check on a computed quantity failed."""
