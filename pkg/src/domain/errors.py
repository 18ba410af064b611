class TriplesError(Exception):
    """
    Base error of the package.

    Every error carries a human readable ``detail`` and the process ``exit_code``
    the command line driver reports for it.
    """

    exit_code = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidSpecificationError(TriplesError):
    pass


class InvalidOperandError(TriplesError):
    pass


class InvalidIndexError(TriplesError):
    pass


class InvalidParameterError(TriplesError):
    pass


class ParseError(TriplesError):
    def __init__(self, detail: str, line: int | None = None):
        if line is not None:
            detail = f"line {line}: {detail}"
        super().__init__(detail)
        self.line = line


class DataValidationError(ParseError):
    pass


class NoQuadruplesError(TriplesError):
    pass


class BudgetExceededError(TriplesError):
    def __init__(
        self, detail: str, best: int | None = None, witness: tuple[int, ...] = ()
    ):
        super().__init__(f"{detail} (best so far: {best})")
        self.best = best
        self.witness = witness
