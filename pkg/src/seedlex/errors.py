"""Exception hierarchy shared across the package."""


class SeedlexError(Exception):
    """Base class for all seedlex errors."""


class CorpusFormatError(SeedlexError):
    """A corpus file failed validation.

    ``source`` names the file, ``location`` the byte offset or line number
    of the first offending record (when applicable).
    """

    def __init__(self, message, source=None, location=None):
        self.source = source
        self.location = location
        parts = []
        if source is not None:
            parts.append(str(source))
        if location is not None:
            parts.append(str(location))
        prefix = ": ".join(parts)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class UnknownWordError(SeedlexError, KeyError):
    def __init__(self, word):
        self.word = word
        super().__init__(f"word not in corpus index: {word!r}")

    def __str__(self):
        return self.args[0]


class UnknownDocumentError(SeedlexError, KeyError):
    def __init__(self, doc_id, message=None):
        self.doc_id = doc_id
        super().__init__(message or f"unknown document id: {doc_id}")

    def __str__(self):
        return self.args[0]


class DimensionMismatchError(SeedlexError, ValueError):
    pass


class ZeroVectorError(SeedlexError, ValueError):
    pass


class SessionStateError(SeedlexError, RuntimeError):
    """An operation was invoked on a session in the wrong state."""


class UnknownSessionError(SeedlexError, KeyError):
    def __init__(self, session_id):
        self.session_id = session_id
        super().__init__(f"unknown session: {session_id}")

    def __str__(self):
        return self.args[0]
