"""Exception hierarchy shared by all modules."""


class MahlerError(Exception):
    """Base class for all package errors."""


class InvalidPolynomial(MahlerError):
    pass


class NotDivisible(MahlerError):
    pass


class HasZeroRoot(MahlerError):
    pass


class NotSquarefree(MahlerError):
    pass


class CriterionNotApplicable(MahlerError):
    pass


class BudgetExhausted(MahlerError):
    """A precision or iteration budget was hit before certification."""


class CombinatorialBudgetExceeded(MahlerError):
    pass


class ReducibleInput(MahlerError):
    def __init__(self, factors):
        self.factors = factors
        super().__init__(
            "input polynomial is reducible: %s" % ([str(f) for f, _ in factors],)
        )


class DegreeCapExceeded(MahlerError):
    pass


class DegreeTooSmall(MahlerError):
    pass


class NotApplicable(MahlerError):
    pass


class ParameterOutOfRange(MahlerError):
    pass


class HypothesisViolated(MahlerError):
    pass


class HypothesisUndecidable(MahlerError):
    pass


class CatalogMissingDegree(MahlerError):
    pass


class DegreeCollapse(MahlerError):
    pass
