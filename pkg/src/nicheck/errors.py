class InputError(ValueError):
    """Raised for malformed systems, policies, traces, or command-line input.

    `diagnostics` carries the individual problems when several were found at
    once (e.g. while parsing a system file).
    """

    def __init__(self, message, diagnostics=()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics) if diagnostics else (message,)


class BudgetError(RuntimeError):
    """Raised when a bounded enumeration would exceed its trace budget."""

    def __init__(self, message, trace_count):
        super().__init__(message)
        self.trace_count = trace_count
