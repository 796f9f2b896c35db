"""Exception types shared across the collector.

Every error carries a stable ``code`` string; the HTTP layer sends that
code as the plain-text response body, so tests and clients can match on
it without parsing prose.
"""


class CollectorError(Exception):
    code = "Error"

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        if self.detail:
            return f"{self.code}: {self.detail}"
        return self.code


class WireError(CollectorError):
    """Base for wire decode failures; ``field`` names the offending field."""

    def __init__(self, field: str, detail: str = ""):
        super().__init__(detail)
        self.field = field

    def __str__(self) -> str:
        return f"{self.code}: {self.field}"


class MalformedWire(WireError):
    code = "MalformedWire"


class SchemaViolation(WireError):
    code = "SchemaViolation"


class InvariantViolation(WireError):
    code = "InvariantViolation"


class InvalidUsername(CollectorError):
    code = "InvalidUsername"


class WeakPassword(CollectorError):
    code = "WeakPassword"


class DuplicateUser(CollectorError):
    code = "DuplicateUser"


class BadCredentials(CollectorError):
    code = "BadCredentials"


class NotAuthenticated(CollectorError):
    code = "NotAuthenticated"


class Forbidden(CollectorError):
    code = "Forbidden"


class BadRange(CollectorError):
    code = "BadRange"


class UnknownUser(CollectorError):
    code = "UnknownUser"


class StorageFailure(CollectorError):
    code = "StorageFailure"


class ParseError(CollectorError):
    """Input-file parse failure; ``line`` is 1-based."""

    code = "ParseError"

    def __init__(self, line: int, detail: str):
        super().__init__(detail)
        self.line = line

    def __str__(self) -> str:
        return f"line {self.line}: {self.detail}"
