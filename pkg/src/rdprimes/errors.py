class PreconditionError(ValueError):
    """An argument violates the documented precondition of an operation."""


class InsufficientPrecision(PreconditionError):
    pass


class BudgetExceeded(RuntimeError):
    """The requested computation is larger than the desk-scale budget."""


def require(cond: bool, msg: str) -> None:
    if not cond:
        raise PreconditionError(msg)


def budget(cond: bool, msg: str) -> None:
    if not cond:
        raise BudgetExceeded(msg)
