"""Exception hierarchy shared by all latcon modules."""


class LatconError(Exception):
    """Base class for all structured errors raised by latcon."""


class CycleDetected(LatconError):
    pass


class IndexOutOfRange(LatconError):
    pass


class NotALattice(LatconError):
    def __init__(self, a, b, reason):
        super().__init__(f"not a lattice: pair ({a}, {b}): {reason}")
        self.pair = (a, b)
        self.reason = reason  # "no-lub" | "no-glb" | "non-unique"


class NotComparable(LatconError):
    pass


class SizeLimitExceeded(LatconError):
    pass


class TooSmall(LatconError):
    pass


class NoMeet(LatconError):
    pass


class NoJoinForBoundedPair(LatconError):
    pass


class NoBottom(LatconError):
    pass


class MergeConflict(LatconError):
    pass


class ContractViolated(LatconError):
    pass


class NotDistributive(LatconError):
    pass


class StrategyFailed(LatconError):
    pass


class InternalVerificationFailed(LatconError):
    pass


class BijectionFailed(LatconError):
    pass


class ParseError(LatconError):
    def __init__(self, line, message):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(LatconError):
    pass
