"""Exception types raised across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error the toolkit raises on bad input."""


class EmptyInput(ToolkitError, ValueError):
    pass


class InvalidWindow(ToolkitError, ValueError):
    pass


class ChannelOutOfRange(ToolkitError, IndexError):
    pass


class InvalidConfig(ToolkitError, ValueError):
    pass


class OutOfStroke(ToolkitError, ValueError):
    pass


class InvalidInertia(ToolkitError, ValueError):
    pass


class DegenerateVolume(ToolkitError, ValueError):
    pass


class LinkageInfeasible(ToolkitError, ValueError):
    pass


class DegeneratePolygon(ToolkitError, ValueError):
    pass


class InvalidOrientation(ToolkitError, ValueError):
    pass


class DegenerateProportions(ToolkitError, ValueError):
    pass


class InvalidP(ToolkitError, ValueError):
    pass


class TraceTooShort(ToolkitError, ValueError):
    pass


class ConfigMismatch(ToolkitError, ValueError):
    pass


class OverlapError(ToolkitError, ValueError):
    pass


class IoError(ToolkitError, OSError):
    pass


class ParseError(ToolkitError, ValueError):
    """Malformed input file content.

    ``line`` is the 1-based line number of the offending row, or None when
    the problem is not tied to one row.
    """

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
            if line is not None:
                where += f"{line}:"
            where += " "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)
