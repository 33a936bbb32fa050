"""Exception hierarchy shared by all modules."""


class HContinuationError(Exception):
    """Base class for every error raised by this package."""


class InvalidArgument(HContinuationError, ValueError):
    pass


class InvalidConfig(InvalidArgument):
    pass


class MissingData(HContinuationError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class IllPosedStep(HContinuationError):
    pass


class WrongBackend(HContinuationError, TypeError):
    pass


class BudgetExceeded(HContinuationError):
    pass


class NumericFailure(HContinuationError, ArithmeticError):
    pass


class SingularInterior(HContinuationError, ArithmeticError):
    pass


class InternalError(HContinuationError, RuntimeError):
    pass
