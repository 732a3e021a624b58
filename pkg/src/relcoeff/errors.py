"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for every error the engine raises deliberately."""


class PolySyntaxError(EngineError):
    """Polynomial text failed to parse; carries the 0-based offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownVariable(PolySyntaxError):
    def __init__(self, name, position):
        super().__init__(f"unknown variable {name!r}", position)
        self.name = name


class ArityMismatch(EngineError):
    pass


class ZeroPolynomial(EngineError):
    pass


class ValidationError(EngineError):
    pass


class ParseError(EngineError):
    """Problem-file syntax error with 1-based line/column."""

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, col {column}: {message}")
        self.line = line
        self.column = column


class CapExceeded(EngineError):
    """Truncation exponent hit the cap while the length count still grew."""

    def __init__(self, last_exponent, last_count):
        super().__init__(
            f"length did not stabilize by truncation exponent {last_exponent} "
            f"(last count {last_count}); ideal is likely not m-primary, or raise "
            "the length cap"
        )
        self.last_exponent = last_exponent
        self.last_count = last_count


class ChainCapExceeded(EngineError):
    pass


class NonPolynomialWindow(EngineError):
    """No zero tail found within the computed table; advises raising n_max."""


class DimensionMismatch(EngineError):
    pass


class NotAReduction(EngineError):
    pass


class NotContained(EngineError):
    pass


class E0Mismatch(EngineError):
    """Internal consistency failure: e0 differed across a reduction pair."""


class SuperficialSearchFailed(EngineError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class ReductionCheckFailed(EngineError):
    pass


class LinkPropertyFailed(EngineError):
    pass


class FlagContradiction(EngineError):
    """A user-asserted ideal flag was falsified by a machine check."""


class PropertyViolation(EngineError):
    """A theorem-guaranteed inclusion failed; signals an engine bug."""


class ManifestMismatch(EngineError):
    def __init__(self, entry, field, expected, got):
        super().__init__(
            f"corpus entry {entry!r}, field {field!r}: expected {expected!r}, got {got!r}"
        )
        self.entry = entry
        self.field = field
        self.expected = expected
        self.got = got
