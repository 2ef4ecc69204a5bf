"""Exception types raised by darkbox."""


class InvalidArgument(ValueError):
    """An argument violates an operation's precondition."""


class NumericFailure(RuntimeError):
    """A numerical procedure failed to converge.

    ``diagnostics`` carries whatever partial information was available
    (best residuals, last bracket, quadrature error estimate, ...).
    """

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = dict(diagnostics or {})
