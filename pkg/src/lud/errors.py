"""Exception hierarchy shared by all lud modules."""


class LudError(Exception):
    """Base class for every error raised by the package."""


class CycleDetected(LudError):
    pass


class NoTop(LudError):
    pass


class AmbiguousTop(LudError):
    def __init__(self, candidates):
        self.candidates = tuple(candidates)
        names = ", ".join(str(c) for c in self.candidates)
        super().__init__(f"more than one maximal element: {names}")


class UnknownLabel(LudError):
    pass


class NotAdmissible(LudError):
    pass


class RefusedTooLarge(LudError):
    pass


class BindingClash(LudError):
    pass


class EmptySubcat(LudError):
    pass


class ArityError(LudError):
    pass


class LudSyntaxError(LudError):
    """Raised by the text parsers; ``diagnostics`` holds every problem found."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(str(first) if first else "syntax error")


class DerivationRejected(LudError):
    """Semantic construction failed at some node of a derivation."""

    def __init__(self, diagnostic):
        self.diagnostic = diagnostic
        super().__init__(str(diagnostic))
