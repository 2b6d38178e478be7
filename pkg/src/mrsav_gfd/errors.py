"""
Exception hierarchy for the mrsav-gfd solver suite.

Every failure the solver, the harness or the file formats can signal derives
from MrSavError, so the CLI can map a whole family onto one exit code.
"""
from pathlib import Path
from typing import Optional


class MrSavError(Exception):
    """Base class for all solver-suite errors."""


class ConfigurationError(MrSavError):
    """
    Raised when inputs are inconsistent with each other or with a config schema.

    Attributes:
        key_path: Dotted config key the problem was found at, when known
    """

    def __init__(self, message: str, key_path: Optional[str] = None):
        self.key_path = key_path
        if key_path:
            message = f"{key_path}: {message}"
        super().__init__(message)


class PreconditionError(MrSavError):
    """Raised when an operation is called outside its documented domain."""


class SingularModeError(MrSavError):
    """Raised when an elliptic inversion meets a non-zero coefficient on its null space."""


class NumericFaultError(MrSavError):
    """Raised when NaN or Inf reaches a linear solve."""


class SingularScalarSolveError(MrSavError):
    """Raised when the auxiliary-variable equation has a (numerically) vanishing denominator."""

    def __init__(self, denominator: float, reference: float, b2: float):
        self.denominator = denominator
        self.reference = reference
        self.b2 = b2
        super().__init__(
            f"singular auxiliary scalar solve: denominator={denominator:.6e}, "
            f"sigma+gamma={reference:.6e}, b2={b2:.6e}"
        )


class DivergenceError(MrSavError):
    """Raised when a time step produces non-finite or runaway values."""

    def __init__(self, step_index: int, time: float, reason: str = "non-finite values"):
        self.step_index = step_index
        self.time = time
        self.reason = reason
        super().__init__(f"divergence at step {step_index} (t={time:.6g}): {reason}")


class CheckpointError(MrSavError):
    """Base class for checkpoint read failures; always names the offending file."""

    def __init__(self, path: Path, message: str):
        self.path = Path(path)
        super().__init__(f"{self.path}: {message}")


class CheckpointFormatError(CheckpointError):
    pass


class CheckpointTruncatedError(CheckpointError):
    pass


class CheckpointShapeError(CheckpointError):
    pass


class SchemaError(MrSavError):
    """Raised when a CSV file does not follow the documented column schema."""
