"""Exception types shared across the package."""


class GraphError(ValueError):
    """Base class for graph validation failures."""


class NotSimpleError(GraphError):
    """Self-loop or parallel edge."""


class NotConnectedError(GraphError):
    """The input graph is not connected."""


class NotCactusError(GraphError):
    """Some edge lies on two simple cycles."""


class NegativeAttributeError(GraphError):
    """A weight, size, cost or capacity is negative (or not an integer)."""


class AttributeOverflowError(GraphError):
    """Attribute totals do not fit in a signed 64-bit integer."""


class InvalidParamsError(ValueError):
    """Problem parameters are malformed (e.g. lower bound above upper bound)."""


class WeightExceedsUpperError(InvalidParamsError):
    """A single vertex weight already exceeds the upper cluster bound."""


class TooLargeError(ValueError):
    """Instance too big for the brute-force oracle."""


class IntervalCountError(RuntimeError):
    """An interval set broke the per-count interval bound.

    The compressed solver keeps at most k intervals per cluster count k.
    Exceeding the bound indicates a solver bug, so the run is aborted with
    a diagnostic instead of silently continuing.
    """


class WitnessNotFoundError(RuntimeError):
    """Backtracking failed to rebuild a partition that should exist (a bug)."""
