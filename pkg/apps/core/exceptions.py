"""Error hierarchy shared by every app.

Each exception carries the process exit code the command line maps it to.
"""


class CFColorError(Exception):
    """Base class for all library errors"""
    exit_code = 2


class FormatError(CFColorError):
    """Malformed graph, coloring, interval or sidecar text"""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InvalidVertexError(CFColorError):
    """A vertex id outside 0..n-1"""

    def __init__(self, vertex, n):
        self.vertex = vertex
        self.n = n
        super().__init__(f"vertex {vertex} is not in 0..{n - 1}")


class PreconditionError(CFColorError):
    """An operation was called on input it is not defined for"""


class InfeasibleError(CFColorError):
    """No conflict-free coloring of the requested kind exists"""
    exit_code = 1


class SizeGuardError(CFColorError):
    """Exhaustive search refused because the instance is too large"""
    exit_code = 3

    def __init__(self, size, limit, what='graph'):
        self.size = size
        self.limit = limit
        super().__init__(f"{what} has {size} vertices, above the limit of {limit}")


class SolverDefectError(CFColorError):
    """A solver produced output that fails its own verifier"""
    exit_code = 4
