class MonoidError(ValueError):
    """Base class for invalid input to any monoid operation."""


class EmptyInput(MonoidError):
    pass


class NonCoprime(MonoidError):
    pass


class ZeroGenerator(MonoidError):
    pass


class GeneratorTooLarge(MonoidError):
    pass


class NonMinimalGenerators(MonoidError):
    pass


class NotInMonoid(MonoidError):
    pass


class EnumerationTooLarge(MonoidError):
    pass


class NoSubcollection(MonoidError):
    pass


class InvalidCollection(MonoidError):
    pass


class SOutOfRange(MonoidError):
    pass


class InvalidTuple(MonoidError):
    pass


class NonIntegerResult(MonoidError):
    pass


class InvalidElasticities(MonoidError):
    pass


class NotArithmetical(MonoidError):
    pass


class NotApplicable(MonoidError):
    pass


class IncompatibleParams(MonoidError):
    pass


class SingleGenerator(MonoidError):
    pass


class IndexOutOfRange(MonoidError):
    pass


class ConstructionError(RuntimeError):
    """A constructive algorithm produced output violating its own guarantees."""
