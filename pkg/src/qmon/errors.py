"""Exception types shared across the package."""


class QmonError(Exception):
    pass


class StructuralError(QmonError, ValueError):
    """Malformed input: ragged tables, out-of-range indices, size mismatches.

    Distinct from an axiom failure, which is a legitimate mathematical verdict.
    """


class AxiomError(QmonError, ValueError):
    """An operation was refused because its input fails a required axiom."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BudgetExceeded(QmonError):
    def __init__(self, cardinality, budget):
        super().__init__(
            f"search space has {cardinality} candidates, budget is {budget}"
        )
        self.cardinality = cardinality
        self.budget = budget
