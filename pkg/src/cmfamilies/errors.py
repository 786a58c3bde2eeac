"""Exception hierarchy shared by the library and the command line."""


class CMFamiliesError(Exception):
    """Base class for all library errors."""


class BundleParseError(CMFamiliesError):
    """A bundle file could not be parsed; carries the location when known."""

    def __init__(self, message: str, path: str | None = None, line: int | None = None, column: int | None = None, field: str | None = None):
        self.path = path
        self.line = line
        self.column = column
        self.field = field
        where = []
        if path:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if field:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class ValidationError(CMFamiliesError):
    """Data loaded fine but violates a structural invariant."""


class GroupEnumerationError(ValidationError):
    """Closure under multiplication did not terminate within the cap."""


class MissingBundleError(CMFamiliesError):
    """No bundle of the requested kind exists for a group."""


class GoldenMissingError(CMFamiliesError):
    """No golden file exists for a group."""
