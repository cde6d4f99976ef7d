"""Exception types shared across the package."""


class WikiLinkError(Exception):
    """Base class for errors raised by this package."""


class DumpParseError(WikiLinkError):
    """The XML export is malformed beyond recovery."""

    def __init__(self, message: str, byte_offset: int | None = None,
                 line: int | None = None):
        detail = message
        if byte_offset is not None:
            detail += f" (byte offset {byte_offset}"
            detail += f", line {line})" if line is not None else ")"
        super().__init__(detail)
        self.byte_offset = byte_offset
        self.line = line


class VectorFormatError(WikiLinkError):
    """A vectors file violates the ``<count> <dim>`` text format."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class TermNotFoundError(WikiLinkError):
    """A query term does not resolve to any concept node."""

    def __init__(self, term: str, suggestions: list[str] | None = None):
        self.term = term
        self.suggestions = suggestions or []
        message = f"unknown concept: {term!r}"
        if self.suggestions:
            message += " (did you mean: " + ", ".join(self.suggestions) + "?)"
        super().__init__(message)


class NetworkStateError(WikiLinkError):
    """An operation was called in the wrong network phase."""


class PersistenceError(WikiLinkError):
    """Base class for save/load failures."""


class MissingNetworkFileError(PersistenceError):
    """A file required by the network directory layout is absent."""


class VersionMismatchError(PersistenceError):
    """The stored format version is not supported by this code."""


class ChecksumMismatchError(PersistenceError):
    """Stored bytes do not match the checksum recorded in meta.json."""
