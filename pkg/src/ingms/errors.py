"""Exception types shared across the toolkit."""


class IngmsError(Exception):
    """Base class for all toolkit errors."""


class NegativeProbability(IngmsError):
    pass


class RowSumNotOne(IngmsError):
    pass


class BadTopologicalOrder(IngmsError):
    pass


class AlphabetMismatch(IngmsError):
    pass


class FactorNotNormalized(IngmsError):
    pass


class UnknownVariable(IngmsError):
    pass


class MissingVariable(IngmsError):
    pass


class LengthMismatch(IngmsError):
    pass


class BudgetExceeded(IngmsError):
    pass


class NotDagClosed(IngmsError):
    pass


class SizeCapExceeded(IngmsError):
    pass


class InternalConsistency(IngmsError):
    """A computed quantity violates a mathematical invariant by more than rounding noise."""
