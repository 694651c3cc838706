"""Exception hierarchy shared by every ipk module."""


class IPKError(Exception):
    """Base exception for interacting-particle kernel errors."""

    exit_code = 1


class DimensionError(IPKError):
    """Exception raised when a matrix has the wrong dimensions."""

    exit_code = 2

    def __init__(self, message: str, rows: int = 0, cols: int = 0):
        super().__init__(message)
        self.rows = rows
        self.cols = cols


class DomainError(IPKError):
    """Exception raised when an argument lies outside an operation's domain."""

    exit_code = 2


class ChamberError(DomainError):
    """Exception raised when a state violates the ordering of its chamber."""

    exit_code = 3

    def __init__(self, message: str, values: tuple[int, ...] = ()):
        super().__init__(message)
        self.values = values


class SupportError(DomainError):
    """Exception raised for innovations or entries outside the allowed support."""

    exit_code = 3


class WindowError(IPKError):
    """Exception raised when a truncation window cannot be certified."""

    exit_code = 4

    def __init__(self, message: str, tail_bound: object = None):
        super().__init__(message)
        self.tail_bound = tail_bound
