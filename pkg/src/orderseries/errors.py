"""Exception hierarchy shared by all modules."""


class OrderSeriesError(Exception):
    """Base class for domain errors (the CLI maps these to exit status 1)."""


class InvalidSizeError(OrderSeriesError, ValueError):
    pass


class SeriesSyntaxError(OrderSeriesError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class ExprSyntaxError(OrderSeriesError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class SizeLimitError(OrderSeriesError, ValueError):
    pass


class NotRepresentableError(OrderSeriesError, ValueError):
    pass


class InfeasibleError(OrderSeriesError, ValueError):
    def __init__(self, report):
        super().__init__(f"series is not the order series of a Wixarika poset: {report.reason}")
        self.report = report


class CompositionError(OrderSeriesError, ValueError):
    pass
