from typing import Any, Dict, Optional


class BalloonLabError(Exception):
    """Base error. `code` is the machine-readable tag shown in CLI diagnostics."""

    code = "BALLOONLAB_ERROR"

    def __init__(self, message: str, code: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        if code:
            self.code = code
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        payload = {"error": self.message, "code": self.code, "type": type(self).__name__}
        if self.details:
            payload["details"] = self.details
        return payload


class ParameterError(BalloonLabError):
    code = "INVALID_PARAMETER"


class DomainError(BalloonLabError):
    """Input is well-formed but outside the domain where the quantity is defined."""

    code = "DOMAIN_ERROR"


class PreconditionError(BalloonLabError):
    code = "PRECONDITION_VIOLATION"


class GuardrailError(BalloonLabError):
    code = "GUARDRAIL_VIOLATION"


class Graph6Error(BalloonLabError):
    code = "MALFORMED_GRAPH6"


class SpecFormatError(BalloonLabError):
    code = "MALFORMED_SPEC"
