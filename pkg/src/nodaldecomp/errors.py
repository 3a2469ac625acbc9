class BudgetExceeded(ValueError):
    """An exhaustive or exact computation would exceed its configured budget."""

    def __init__(self, message: str, required: int, allowed: int):
        super().__init__(message)
        self.required = required
        self.allowed = allowed


class ConvergenceError(RuntimeError):
    """The Jacobi eigensolver did not converge within its sweep cap."""
