"""Exception types shared across the package."""


class NbpercError(Exception):
    """Base class for all package-specific errors."""


class ParseError(NbpercError, ValueError):
    """Malformed edge-list input.  Carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphStructureError(NbpercError, ValueError):
    """Structural invariant violated (self-loop, duplicate arc, bad id)."""


class DimensionMismatchError(NbpercError, ValueError):
    """Vector length does not match operator dimension."""


class CapExceededError(NbpercError, ValueError):
    """Problem size exceeds a configured exact-computation cap."""


class NotStronglyConnectedError(NbpercError, ValueError):
    """Operation requires a strongly connected (line) digraph.

    ``arc`` holds an offending arc (tail, head) when known.
    """

    def __init__(self, message, arc=None):
        self.arc = arc
        super().__init__(message)


class NonConvergenceError(NbpercError, RuntimeError):
    """Iterative routine failed to converge; carries the certified bracket."""

    def __init__(self, message, bracket=None):
        self.bracket = bracket
        super().__init__(message)


class BoundDomainError(NbpercError, ValueError):
    """Closed-form bound evaluated outside its validity domain (bound void)."""


class NoCrossingError(NbpercError, ValueError):
    """Threshold estimation found no crossing of the target level in range."""
