"""Exception hierarchy.

Every error carries a short machine-readable ``code`` used by the command
line front end.
"""


class PuiseuxError(Exception):
    code = "error"


class TowerError(PuiseuxError):
    """A root lies outside the supported cyclotomic tower."""

    code = "tower"


class CapExceeded(PuiseuxError):
    """A configured resource cap (depth, denominator, conductor, orbit) was hit."""

    code = "cap_exceeded"


class InjectivityError(PuiseuxError):
    """Two distinct exponents received the same weight."""

    code = "injectivity"

    def __init__(self, first, second, weight):
        self.exponents = (first, second)
        self.weight = weight
        super().__init__(
            f"weight vector is not injective: exponents {_fmt(first)} and "
            f"{_fmt(second)} both have weight {weight}"
        )


class NotAUnitError(PuiseuxError):
    code = "not_a_unit"


class PrecisionError(PuiseuxError):
    """The requested bound exceeds what the truncated data determines."""

    code = "precision"


class UndeterminedValue(PuiseuxError):
    code = "undetermined"


class ParseError(PuiseuxError):
    code = "parse"

    def __init__(self, message, line=1, column=1):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


def _fmt(e):
    from .scalars import rat_str

    return "(" + ", ".join(rat_str(x) for x in e) + ")"
