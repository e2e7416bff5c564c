class DomainError(ValueError):
    """Argument outside the domain where the quantity is defined."""


class ResolutionError(ValueError):
    """Evaluation point beyond what the configured quadrature resolves."""

    def __init__(self, msg="resolution error: increase nodes or reduce radius"):
        super().__init__(msg)


class NotHolomorphicError(ValueError):
    pass


class HypothesisError(ValueError):
    """Input fails a stated precondition; ``where`` locates the violation."""

    def __init__(self, msg, where=None):
        super().__init__(msg)
        self.where = where


class ConvergenceError(RuntimeError):
    pass
