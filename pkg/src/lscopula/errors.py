"""Exception types raised by the toolkit."""


class LSCopulaError(Exception):
    pass


class DomainError(LSCopulaError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class DimensionError(LSCopulaError, ValueError):
    """Copula dimension exceeds the generator's validity dimension."""


class PositivityError(LSCopulaError, ValueError):
    pass


class LengthMismatch(LSCopulaError, ValueError):
    pass


class UnsupportedFamily(LSCopulaError, NotImplementedError):
    pass


class ConvergenceError(LSCopulaError, RuntimeError):
    pass


class MissingEvaluator(LSCopulaError, AttributeError):
    pass


class ExhaustedRetries(LSCopulaError, RuntimeError):
    """No structurally and hypothesis-valid case found within the attempt budget."""
