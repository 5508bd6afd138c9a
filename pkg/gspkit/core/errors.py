"""
Exception hierarchy shared by the library and the CLI
"""

from typing import List, Optional


class GspkitError(Exception):
    """Base class for all toolkit errors"""


class ParameterError(GspkitError, ValueError):
    """An argument violates an operation's precondition"""


class InfeasibleError(GspkitError):
    """The requested construction cannot exist for the given input"""


class ResourceLimitError(GspkitError):
    """A configured budget (table cells, item limit) would be exceeded"""

    def __init__(self, message: str, required: int, limit: int):
        super().__init__(f"{message} (required {required}, limit {limit})")
        self.required = required
        self.limit = limit


class ParseError(GspkitError, ValueError):
    """A text file does not follow its format"""

    def __init__(self, message: str, line: Optional[int] = None, source: Optional[str] = None):
        where = source or "<input>"
        if line is not None:
            where = f"{where}:{line}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.source = source


class VerificationError(GspkitError):
    """A packing or layout failed verification"""

    def __init__(self, violations: List[str]):
        summary = violations[0] if violations else "verification failed"
        if len(violations) > 1:
            summary += f" (+{len(violations) - 1} more)"
        super().__init__(summary)
        self.violations = list(violations)
