"""Exception hierarchy.

Every domain error derives from :class:`CGroupError` (itself a ``ValueError``)
so callers and the CLI can catch one type.
"""


class CGroupError(ValueError):
    pass


# arithmetic
class OutOfRange(CGroupError):
    pass


class FactorizationTimeout(CGroupError):
    pass


class NotCoprime(CGroupError):
    pass


class NotGenerator(CGroupError):
    pass


class ModuliNotCoprime(CGroupError):
    pass


# counting / clusters
class InvalidDivisor(CGroupError):
    pass


class InvalidActingOrder(CGroupError):
    pass


class NotPermissible(CGroupError):
    pass


class ContextMismatch(CGroupError):
    pass


# structure / identification
class ExponentTooLarge(CGroupError):
    pass


class InvalidParams(CGroupError):
    pass


class InvalidDescriptor(CGroupError):
    pass


class IdOutOfRange(CGroupError):
    pass


# permutation groups
class DegreeTooLarge(CGroupError):
    pass


class NotCGroup(CGroupError):
    pass


class SamplingBudgetExhausted(CGroupError):
    pass


# oracle
class BoundExceeded(CGroupError):
    pass
