"""
Error types raised by secbif.

All errors derive from ValueError, so plain `except ValueError` keeps working.
The `exit_code` attribute is what the command-line interface returns for them.
"""

from __future__ import annotations


class SecbifError(ValueError):
    """
    SecbifError Class

    Base class for all secbif errors.

    Attributes:
        exit_code (int): Process exit code used by the CLI.
    """

    exit_code: int = 1


class SchemaViolationError(SecbifError):
    exit_code = 2


class SecularFrequencyDegenerateError(SecbifError):
    exit_code = 3


class IsotropicDegenerateError(SecbifError):
    exit_code = 4


class InfeasibleSigma0Error(SecbifError):
    exit_code = 5


class NoFeasibleInitialConditionsError(SecbifError):
    exit_code = 6


class PoleDegenerateError(SecbifError):
    """
    PoleDegenerateError Class

    Raised when the section angle is undefined because the state sits on a pole of the sphere.

    Attributes:
        circle_radius_squared (float): X2^2 + Y2^2 of the section image (sigma0 + sigma3).
    """

    def __init__(self, message: str, circle_radius_squared: float) -> None:
        super().__init__(message)
        self.circle_radius_squared = circle_radius_squared


class InfeasibleGeometryError(SecbifError):
    pass


class InfeasibleAmdError(SecbifError):
    pass


class SymmetricBranchError(SecbifError):
    """
    SymmetricBranchError Class

    Raised when a linear coefficient of the quadratic model vanishes at the requested sigma0.

    Attributes:
        roots (list): The special-case critical points (mu = A or mu = C branch).
    """

    def __init__(self, message: str, roots: list) -> None:
        super().__init__(message)
        self.roots = roots


class SecondKindDegenerateError(SecbifError):
    pass


class DegenerateConstantError(SecbifError):
    pass


class EmptyDomainError(SecbifError):
    pass


class EmptyLevelError(SecbifError):
    pass


class StepFailureError(SecbifError):
    pass


class LeftDomainError(SecbifError):
    pass
