"""
Memory image files.

Hex format: one 8-hex-digit word per line, `@<hexaddr>` moves the load
cursor, `#` starts a comment. Binary format: flat little-endian words.
"""

import logging
import struct
from dataclasses import dataclass, field
from pathlib import Path

from ..core.errors import ImageFormatError
from ..utils.text import format_word, parse_hex, strip_comment

logger = logging.getLogger(__name__)


@dataclass
class Segment:
    """Consecutive words starting at `base` (None: the loader's default origin)."""
    base: int | None
    words: list[int] = field(default_factory=list)


def parse_hex_image(text: str) -> list[Segment]:
    segments: list[Segment] = []
    current = Segment(base=None)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        if line.startswith("@"):
            try:
                addr = parse_hex(line[1:])
            except ValueError:
                raise ImageFormatError(f"line {lineno}: bad load address {line!r}")
            if addr & 0b11:
                raise ImageFormatError(f"line {lineno}: load address 0x{addr:x} is not word-aligned")
            if current.words or current.base is not None:
                segments.append(current)
            current = Segment(base=addr)
            continue
        for token in line.split():
            try:
                word = parse_hex(token)
            except ValueError:
                raise ImageFormatError(f"line {lineno}: bad word {token!r}")
            if word >> 32:
                raise ImageFormatError(f"line {lineno}: word {token!r} is wider than 32 bits")
            current.words.append(word)
    if current.words or current.base is not None:
        segments.append(current)
    return [s for s in segments if s.words]


def format_hex_image(words: list[int], origin: int | None = None) -> str:
    lines = []
    if origin is not None:
        lines.append(f"@{origin:08x}")
    lines.extend(format_word(w) for w in words)
    return "\n".join(lines) + "\n"


def parse_binary_image(data: bytes) -> list[Segment]:
    if len(data) % 4:
        raise ImageFormatError(f"binary image length {len(data)} is not a multiple of 4")
    words = [w for (w,) in struct.iter_unpack("<I", data)]
    return [Segment(base=None, words=words)] if words else []


def format_binary_image(words: list[int]) -> bytes:
    return struct.pack(f"<{len(words)}I", *(w & 0xFFFFFFFF for w in words))


def read_image(path: str | Path) -> list[Segment]:
    """Read a `.bin` file as raw words, anything else as hex text."""
    p = Path(path)
    if p.suffix.lower() == ".bin":
        segments = parse_binary_image(p.read_bytes())
    else:
        segments = parse_hex_image(p.read_text(encoding="utf-8"))
    logger.info(f"Read image {p}: {sum(len(s.words) for s in segments)} words in {len(segments)} segments")
    return segments
