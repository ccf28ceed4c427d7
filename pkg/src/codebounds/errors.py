"""Exception types shared across the package."""


class CodeBoundsError(Exception):
    """Base class for package-specific failures."""


class NoCertificateError(CodeBoundsError):
    """The LP admits no sign-feasible polynomial at the requested degree."""


class LPFailureError(CodeBoundsError):
    """The LP solver stalled or returned a numerically unusable result."""


class TheoremViolationError(CodeBoundsError):
    """A verified certificate was contradicted by an existing code.

    This should never fire; it indicates a bug in the pipeline (or a
    disproof of the underlying bound) and is always surfaced loudly.
    """
