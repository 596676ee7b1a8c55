"""Exception hierarchy shared by all modules."""


class ModuliError(ValueError):
    """Base class for every error raised by this package."""


class BadArrangement(ModuliError):
    pass


class NotConvergent(ModuliError):
    pass


class BadComposition(ModuliError):
    pass


class TooSmall(ModuliError):
    pass


class MismatchedCarrier(ModuliError):
    pass


class LengthMismatch(ModuliError):
    pass


class AmbiguousType(ModuliError):
    pass


class BadForgetSet(ModuliError):
    pass


class NotAStratum(ModuliError):
    """Raised when a partition set contains a pair at distance != 1."""

    def __init__(self, first, second, distance):
        self.first = first
        self.second = second
        self.distance = distance
        super().__init__(
            f"not a stratum: delta({first}, {second}) = {distance}"
        )


class EmptyPartitionSet(ModuliError):
    pass


class NotAnEdge(ModuliError):
    pass


class BadTree(ModuliError):
    pass


class BadCodim(ModuliError):
    pass


class MismatchedOrder(ModuliError):
    pass


class EnumerationCap(ModuliError):
    pass


class HypothesisViolated(ModuliError):
    pass


class BadK(ModuliError):
    pass


class BadOrder(ModuliError):
    pass


class Divergent(ModuliError):
    pass


class PoleOnPath(ModuliError):
    pass


class CertificationFailed(ModuliError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)
