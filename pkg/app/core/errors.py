"""
Error types raised by the lab. Every error carries a stable `error_code` and the
process exit code the CLI maps it to.
"""
from __future__ import annotations

from typing import Optional


class LabError(Exception):
    error_code: str = "LAB_ERROR"
    exit_code: int = 1

    def __init__(self, detail: str = "", *, error: Optional[str] = None):
        super().__init__(detail or error or self.error_code)
        self.detail = detail
        self.error = error or self.__class__.__name__


class ConfigurationError(LabError):
    error_code = "CONFIGURATION_ERROR"
    exit_code = 2


class NumericalDomainError(LabError):
    error_code = "NUMERICAL_DOMAIN_ERROR"
    exit_code = 3


# Configuration / validation errors

class GridMismatch(ConfigurationError):
    error_code = "GRID_MISMATCH"


class DimensionMismatch(ConfigurationError):
    error_code = "DIMENSION_MISMATCH"


class UnsupportedPotential(ConfigurationError):
    error_code = "UNSUPPORTED_POTENTIAL"


# Numerical domain errors

class NonPositiveSample(NumericalDomainError):
    error_code = "NON_POSITIVE_SAMPLE"


class NonPositiveTime(NumericalDomainError):
    error_code = "NON_POSITIVE_TIME"


class CausticSingularity(NumericalDomainError):
    error_code = "CAUSTIC_SINGULARITY"


class DimensionTooLarge(NumericalDomainError):
    error_code = "DIMENSION_TOO_LARGE"


class NotUnbiased(NumericalDomainError):
    error_code = "NOT_UNBIASED"


class NonUnitaryKernel(NumericalDomainError):
    error_code = "NON_UNITARY_KERNEL"


class PhaseUnwrapFailure(NumericalDomainError):
    error_code = "PHASE_UNWRAP_FAILURE"


class BlowUp(NumericalDomainError):
    error_code = "BLOW_UP"


class ModeCaustic(NumericalDomainError):
    error_code = "MODE_CAUSTIC"

    def __init__(self, mode: tuple[int, ...], detail: str = ""):
        super().__init__(detail or f"|sin(omega_k t)| below caustic tolerance at mode {mode}")
        self.mode = mode
