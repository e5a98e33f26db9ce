"""Pluggable text tokenizers for name/font/text fields.

Text-bearing parameters are delegated to a tokenizer that owns the reserved
text region of the vocabulary.  Any implementation must satisfy the
round-trip contract ``decode(encode(s)) == s`` for valid UTF-8 input.

The built-in fallback is byte-level (256 ids), which guarantees the contract
without external assets.  ``ExternalVocabTokenizer`` replays a pretrained
tokenizer's static vocabulary (id <-> byte sequence table) with greedy
longest-match encoding, so any tokenizer can be plugged in without its
software stack.
"""

from __future__ import annotations

from .errors import TokenOutOfRange


class TextTokenizer:
    """Interface: encode/decode within [base, base + size)."""

    tokenizer_id: str = "abstract"

    def __init__(self, base: int):
        self.base = base

    @property
    def size(self) -> int:
        raise NotImplementedError

    def encode(self, text: str) -> list[int]:
        raise NotImplementedError

    def decode(self, ids: list[int]) -> str:
        raise NotImplementedError


class ByteTextTokenizer(TextTokenizer):
    """UTF-8 byte fallback: one id per byte, 256 ids."""

    tokenizer_id = "builtin-bytes"

    @property
    def size(self) -> int:
        return 256

    def encode(self, text: str) -> list[int]:
        return [self.base + b for b in text.encode("utf-8")]

    def decode(self, ids: list[int]) -> str:
        out = bytearray()
        for i, tok in enumerate(ids):
            b = tok - self.base
            if not 0 <= b < 256:
                raise TokenOutOfRange(tok, "text", position=i)
            out.append(b)
        return out.decode("utf-8")


class ExternalVocabTokenizer(TextTokenizer):
    """Replays a static id <-> byte-sequence vocabulary file.

    File format: a ``#texttok <id>`` header line, then one entry per line as
    ``<local-id> <hex-bytes>``.  All 256 single-byte entries must be present
    so greedy longest-match encoding can always fall back to bytes.
    """

    def __init__(self, base: int, path: str):
        super().__init__(base)
        self.entries: dict[int, bytes] = {}
        name = "external"
        with open(path, "r", encoding="utf-8") as f:
            for line in f:
                line = line.strip()
                if not line:
                    continue
                if line.startswith("#texttok"):
                    name = line.split(None, 1)[1].strip()
                    continue
                if line.startswith("#"):
                    continue
                sid, hexes = line.split()
                self.entries[int(sid)] = bytes.fromhex(hexes)
        self.tokenizer_id = f"external:{name}"
        singles = {b for seq in self.entries.values() if len(seq) == 1 for b in seq}
        if len(singles) != 256:
            raise ValueError("external vocabulary must cover all 256 single bytes")
        self._by_seq = {seq: sid for sid, seq in sorted(self.entries.items(), reverse=True)}
        self._max_len = max(len(seq) for seq in self.entries.values())

    @property
    def size(self) -> int:
        return max(self.entries) + 1

    def encode(self, text: str) -> list[int]:
        data = text.encode("utf-8")
        out: list[int] = []
        i = 0
        while i < len(data):
            for ln in range(min(self._max_len, len(data) - i), 0, -1):
                sid = self._by_seq.get(data[i:i + ln])
                if sid is not None:
                    out.append(self.base + sid)
                    i += ln
                    break
        return out

    def decode(self, ids: list[int]) -> str:
        out = bytearray()
        for i, tok in enumerate(ids):
            seq = self.entries.get(tok - self.base)
            if seq is None:
                raise TokenOutOfRange(tok, "text", position=i)
            out.extend(seq)
        return out.decode("utf-8")


def make_text_tokenizer(spec_id: str, base: int) -> TextTokenizer:
    """Instantiate from a CLI-style id: ``builtin`` or ``external:FILE``."""
    if spec_id in ("builtin", "builtin-bytes"):
        return ByteTextTokenizer(base)
    if spec_id.startswith("external:"):
        return ExternalVocabTokenizer(base, spec_id.split(":", 1)[1])
    raise ValueError(f"unknown text tokenizer {spec_id!r}")
