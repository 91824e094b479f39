"""Exception hierarchy shared by the library and the command line tool."""


class NaimarkError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(NaimarkError, ValueError):
    pass


class NotIsometric(NaimarkError, ValueError):
    """Rows that were required to be orthonormal are not."""


class NotAFrame(NaimarkError, ValueError):
    """The operation needs a spanning frame but got a Bessel sequence."""


class DegenerateInput(NaimarkError, ValueError):
    """All-zero input, so there is no positive upper bound to work with."""


class PadBoundTooSmall(NaimarkError, ValueError):
    pass


class NotUnitNorm(NaimarkError, ValueError):
    pass


class TooLarge(NaimarkError, ValueError):
    """Exhaustive subset enumeration would exceed the configured guard."""


class ScalingDegenerate(NaimarkError, ValueError):
    """Upper bound too close to 1 to rescale the complement to unit norm."""


class ParseError(NaimarkError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)
