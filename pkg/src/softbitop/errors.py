class SoftBitopError(Exception):
    """Base class for input and contract errors raised by this package."""


class ShapeError(SoftBitopError):
    pass


class UnknownLabel(SoftBitopError):
    pass


class CapExceeded(SoftBitopError):
    pass


class AxiomViolation(SoftBitopError):
    """A supplied structure (group, topology, soft topology) fails its axioms.

    ``witness`` holds the canonically first violating data.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCanonical(SoftBitopError):
    pass


class TheoremViolation(SoftBitopError):
    """Two routes that must agree disagreed on a concrete instance.

    ``instance`` carries a full serialization so the incident can be replayed.
    """

    def __init__(self, message, instance=None, details=None):
        super().__init__(message)
        self.instance = instance
        self.details = details or {}
