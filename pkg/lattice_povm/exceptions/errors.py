"""
Custom exceptions for lattice-povm.
"""
from typing import Any, Dict, Optional


class LatticePovmError(Exception):
    """Base exception for lattice-povm."""

    def __init__(
        self,
        message: str,
        exit_code: int = 2,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message)
        self.message = message
        self.exit_code = exit_code
        self.error_code = error_code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """Convert exception to dictionary."""
        return {
            "type": self.__class__.__name__,
            "message": self.message,
            "exit_code": self.exit_code,
            "error_code": self.error_code,
            "details": self.details,
        }


class InputError(LatticePovmError):
    """Invalid argument, shape mismatch or violated precondition."""

    def __init__(
        self,
        message: str,
        field: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None
    ):
        super().__init__(message, exit_code=2, error_code="INPUT_ERROR", details=details)
        self.field = field


class RefusalError(InputError):
    """Instance too large for an exhaustive or brute-force routine."""

    def __init__(self, message: str, required: int, cap: int):
        super().__init__(message, details={"required": required, "cap": cap})
        self.error_code = "REFUSED"
        self.required = required
        self.cap = cap


class ConfigurationError(LatticePovmError):
    """Configuration error."""

    def __init__(self, message: str, config_key: Optional[str] = None):
        super().__init__(message, exit_code=2, error_code="CONFIG_ERROR")
        self.config_key = config_key


class VerificationError(LatticePovmError):
    """One or more oracle checks failed."""

    def __init__(self, message: str = "Verification failed", failed_checks: Optional[list] = None):
        super().__init__(message, exit_code=1, error_code="VERIFICATION_FAILED")
        self.failed_checks = failed_checks or []
