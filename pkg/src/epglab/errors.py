"""Exception hierarchy shared by every epglab module."""

from __future__ import annotations


class EpglabError(Exception):
    """Base class for all library errors."""


class ParseError(EpglabError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        self.message = message
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class GraphTooLarge(EpglabError):
    pass


class NotAClique(EpglabError):
    pass


class BadParameter(EpglabError):
    pass


class RangeError(EpglabError):
    pass


class CatalogMissing(EpglabError):
    pass


class OutOfBounds(EpglabError):
    pass


class DegeneratePath(EpglabError):
    pass


class NotBlockGraph(EpglabError):
    pass


class NotCactus(EpglabError):
    pass
