"""Exception hierarchy shared by the services, the CLI and the HTTP API.

Every error carries a stable machine-readable ``code`` and the process
``exit_code`` the CLI reports for it.
"""


class BranchkitError(Exception):
    """Base class for all library errors"""

    code = "error"
    exit_code = 2

    def __init__(self, message: str, hint: str = None):
        super().__init__(message)
        self.message = message
        self.hint = hint

    def to_dict(self) -> dict:
        payload = {"code": self.code, "message": self.message}
        if self.hint:
            payload["hint"] = self.hint
        return payload


class InvalidParameterError(BranchkitError, ValueError):
    """Input outside the admissible parameter domain"""

    code = "invalid_parameter"
    exit_code = 2


class BudgetRequiredError(InvalidParameterError):
    code = "budget_required"


class DegenerateSignatureError(InvalidParameterError):
    code = "degenerate_signature"


class UnknownLabelError(InvalidParameterError):
    code = "unknown_label"


class GammaPoleError(InvalidParameterError):
    code = "pole"


class GammaOverflowError(InvalidParameterError):
    code = "overflow"


class UnsupportedRegionError(BranchkitError):
    """Parameters are valid but the requested evaluation is not supported"""

    code = "unsupported_region"
    exit_code = 3


class SeriesDivergenceError(UnsupportedRegionError):
    code = "series_divergence"


class QuadratureError(UnsupportedRegionError):
    code = "quadrature_non_convergence"


class UnsupportedQueryError(UnsupportedRegionError):
    code = "unsupported_query"


class VerificationFailure(BranchkitError):
    """At least one verification case exceeded its threshold"""

    code = "verification_failed"
    exit_code = 1

    def __init__(self, message: str, report: dict = None, hint: str = None):
        super().__init__(message, hint=hint)
        self.report = report
