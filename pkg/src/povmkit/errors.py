"""Exception hierarchy for povmkit.

All toolkit errors derive from :class:`PovmkitError` so callers can catch
one base class. Validation errors carry the offending residual where it
makes sense, so messages are actionable.
"""

from __future__ import annotations


class PovmkitError(Exception):
    """Base class for all povmkit errors."""


class NonFinite(PovmkitError):
    """An input contains NaN or Inf entries."""


class NotHermitian(PovmkitError):
    """A matrix fails the Hermitian symmetry check."""


class NotUnitVector(PovmkitError):
    """A vector that must have unit norm does not."""


class DimensionMismatch(PovmkitError):
    """Operands have incompatible dimensions."""


class DimensionLimit(PovmkitError):
    """A composite dimension exceeds the dense-algebra bound (4096)."""


class InvariantViolation(PovmkitError):
    """A constructed value violates one of its mathematical invariants."""


class NotUnitary(InvariantViolation):
    """A coupling matrix is not unitary within tolerance."""


class TooManyOutcomes(PovmkitError):
    """An observable has more distinct outcomes than a builder supports."""


class KernelOverflow(PovmkitError):
    """Grid smearing cannot produce a well-separated outcome set."""


class NegativeProbability(PovmkitError):
    """An outcome probability is below -atol."""


class NegativeNoiseSquare(PovmkitError):
    """The squared variance-based noise came out negative.

    Signals a biased scheme outside the noise formula's domain; the
    quantity E[2] - A^2 is only guaranteed positive for unbiased schemes.
    """


class NotCommuting(PovmkitError):
    """A joint distribution was requested for noncommuting observables."""


class DegenerateAxes(PovmkitError):
    """Two spin axes that must differ coincide."""


class UnknownCase(PovmkitError):
    """An unknown gallery case name was requested."""


class ParseError(PovmkitError):
    """A file is not syntactically valid."""


class SchemaError(PovmkitError):
    """A parsed document does not match the expected schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
