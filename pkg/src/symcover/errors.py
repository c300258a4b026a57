"""Exception types shared across the package."""


class SymcoverError(Exception):
    """Base class for all domain errors."""


class NotAssociative(SymcoverError):
    def __init__(self, x, y, z):
        self.triple = (x, y, z)
        super().__init__(f"table not associative at triple {(x, y, z)}")


class NoIdentity(SymcoverError):
    pass


class NoInverse(SymcoverError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class SizeGuardExceeded(SymcoverError):
    pass


class UnknownPreset(SymcoverError):
    pass


class NonIntegralGenus(SymcoverError):
    pass


class GenusBelowTwo(SymcoverError):
    pass


class NegativeDimension(SymcoverError):
    pass


class LimitExceeded(SymcoverError):
    def __init__(self, limit):
        self.limit = limit
        super().__init__(f"vector enumeration cap of {limit} exceeded")


class IndexOutOfRange(SymcoverError):
    pass


class PostconditionViolated(SymcoverError):
    pass


class MoveValidationFailed(SymcoverError):
    def __init__(self, reason, counterexample=None):
        self.reason = reason
        self.counterexample = counterexample
        msg = reason
        if counterexample is not None:
            msg += f" (counterexample vector: {counterexample})"
        super().__init__(msg)


class OrbitBudgetExceeded(SymcoverError):
    def __init__(self, budget):
        self.budget = budget
        super().__init__(f"orbit budget of {budget} visited states exceeded")


class BudgetExceeded(SymcoverError):
    pass


class DimensionMismatch(SymcoverError):
    pass


class CorruptCacheEntry(SymcoverError):
    pass
