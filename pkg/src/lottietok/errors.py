"""Exception types shared across the toolkit."""

from __future__ import annotations


class LottieTokError(Exception):
    """Base class for all toolkit errors."""


class MalformedJson(LottieTokError):
    """Input text is not syntactically valid JSON."""


class SchemaViolation(LottieTokError):
    """A field exists but has the wrong type, shape, or value."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason


class UnsupportedLayerKind(LottieTokError):
    """Layer type outside {0, 1, 3, 4, 5}; the file needs `clean` first."""

    def __init__(self, kind: int, path: str = ""):
        super().__init__(f"unsupported layer type {kind} at {path or '<root>'}")
        self.kind = kind
        self.path = path


class UnsupportedContent(LottieTokError):
    """Document node that the command schema cannot represent."""

    def __init__(self, path: str, reason: str = ""):
        super().__init__(f"{path}: {reason}" if reason else path)
        self.path = path
        self.reason = reason


class DegenerateDuration(LottieTokError):
    """Temporal normalization requires out_point > in_point."""


class UnknownParamType(LottieTokError):
    """Parameter type missing from the vocabulary."""


class TokenOutOfRange(LottieTokError):
    """Token id falls outside the region expected at its position."""

    def __init__(self, token: int, expected: str, position: int | None = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"token {token} outside region for {expected}{where}")
        self.token = token
        self.expected = expected
        self.position = position


class VersionMismatch(LottieTokError):
    """Vocabulary or text-tokenizer version differs from sequence provenance."""


class TextTooLong(LottieTokError):
    """Encoded text group exceeds the count region capacity."""


class MissingMeta(LottieTokError):
    """Command sequence does not start with a META command."""


class UnbalancedNesting(LottieTokError):
    """Begin/end markers do not balance."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class ArityMismatch(LottieTokError):
    """Command carries the wrong number or kind of parameters."""


class EmptyStats(LottieTokError):
    """Vocabulary builder received no observations and defaults are disabled."""


class KTooLarge(LottieTokError):
    """Requested more clusters than there are distinct signatures."""


class AlreadyAnimated(LottieTokError):
    """Motion injection target already has keyframed transforms."""


class UnsupportedSvgFeature(LottieTokError):
    """SVG content outside the declared import subset."""

    def __init__(self, name: str):
        super().__init__(f"unsupported SVG feature: {name}")
        self.name = name
