"""Exceptions raised when an input violates a hypothesis of the algorithms.

Everything derived from ``HypothesisViolation`` is a property of the input
(or of an unlucky random choice that survived every retry), never a bug.
"""


class HypothesisViolation(Exception):
    pass


class NotSmoothError(HypothesisViolation):
    pass


class PrimitiveElementError(HypothesisViolation):
    pass


class NotRegularError(HypothesisViolation):
    pass


class EmptyFiberError(HypothesisViolation):
    pass


class NonRadicalError(HypothesisViolation):
    pass


class LiftingPointError(HypothesisViolation):
    pass


class DegreeBoundError(HypothesisViolation):
    pass


class ConsistentSystemError(HypothesisViolation):
    pass


class ZeroDivisorError(HypothesisViolation):
    pass


class NotDivisibleError(HypothesisViolation):
    pass
