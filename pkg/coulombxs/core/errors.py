# coulombxs/core/errors.py
from typing import Any, Optional


class CoulombError(Exception):
    """Base class for every failure raised by the library."""

    exit_code = 3

    def __init__(self, message: str, **context: Any):
        super().__init__(message)
        self.message = message
        self.context = context

    def __str__(self) -> str:
        if not self.context:
            return self.message
        details = ", ".join(f"{k}={v}" for k, v in self.context.items())
        return f"{self.message} ({details})"


# ==========================================
# 1. INPUT DOMAIN ERRORS (exit code 2)
# ==========================================

class DomainError(CoulombError):
    exit_code = 2


class PoleError(DomainError):
    """Argument sits on a pole of Γ or ψ."""


class BranchError(DomainError):
    """Argument lies on the negative real axis (branch cut of U)."""


class SingularAngle(DomainError):
    pass


class CoincidentDirections(DomainError):
    pass


class DegenerateCompensation(DomainError):
    pass


# ==========================================
# 2. NUMERICAL FAILURES (exit code 3)
# ==========================================

class NoConvergence(CoulombError):
    pass


class OverflowGuard(CoulombError):
    pass


class NonFiniteIntegrand(CoulombError):
    pass


class TailNotDecaying(CoulombError):
    pass


class AccelerationStalled(CoulombError):
    pass


class IntegrandUnderflow(CoulombError):
    pass


class MaxDepthExceeded(CoulombError):
    """Adaptive subdivision ran out of depth; `best` holds the current estimate."""

    def __init__(self, message: str, best: Optional[Any] = None, **context: Any):
        super().__init__(message, **context)
        self.best = best


class IoError(CoulombError):
    pass


# ==========================================
# 3. COMMAND LINE
# ==========================================

class UsageError(DomainError):
    """A command-line value failed validation; `flag` names the option."""

    def __init__(self, flag: str, message: str, **context: Any):
        super().__init__(f"{flag}: {message}", **context)
        self.flag = flag
