"""Exception hierarchy.

Every construction rejection carries a stable class name; the CLI reports it
verbatim so scripts can match on it.
"""


class HyperLRCError(Exception):
    """Base class for all library errors."""


# finite fields
class FieldError(HyperLRCError):
    pass


class CompositeCharacteristic(FieldError):
    pass


class EvenCharacteristic(FieldError):
    pass


class ReducibleModulus(FieldError):
    pass


class DivisionByZero(HyperLRCError, ZeroDivisionError):
    pass


# curves and functions
class BadDegree(HyperLRCError):
    pass


class SingularModel(HyperLRCError):
    pass


class ZeroFunction(HyperLRCError):
    pass


class IrrationalSupport(HyperLRCError):
    pass


NonRationalSupport = IrrationalSupport


class PoleAtPlace(HyperLRCError):
    pass


# automorphisms
class ConditionNotMet(HyperLRCError):
    pass


class NotAnAutomorphism(HyperLRCError):
    pass


class GroupTooLarge(HyperLRCError):
    pass


# constructions
class NoBasePoint(HyperLRCError):
    pass


class InvarianceFailed(HyperLRCError):
    pass


class PoleDegreeMismatch(HyperLRCError):
    pass


class PatternNotFound(HyperLRCError):
    pass


class FiberShortage(HyperLRCError):
    pass


class RankDeficient(HyperLRCError):
    pass


class BudgetInvalid(HyperLRCError):
    pass


# verification
class Infeasible(HyperLRCError):
    pass


class SingularSubmatrix(HyperLRCError):
    pass


class ConfigError(HyperLRCError):
    pass
