"""Text processing utilities."""


def strip_comment(line: str, marker: str = "#") -> str:
    """Drop everything from the comment marker to the end of line."""
    cut = line.find(marker)
    if cut >= 0:
        line = line[:cut]
    return line.strip()


def parse_int(text: str) -> int:
    """
    Parse an integer literal.

    Accepts decimal, 0x hex, 0b binary and 0o octal, with an optional sign.

    Raises:
        ValueError: not an integer literal
    """
    t = (text or "").strip().replace("_", "")
    if not t:
        raise ValueError("empty number")
    return int(t, 0) if not _is_plain_decimal(t) else int(t, 10)


def _is_plain_decimal(t: str) -> bool:
    # int("010", 0) не принимается, поэтому обычные цифры идут через base 10
    body = t[1:] if t[:1] in "+-" else t
    return body.isdigit()


def parse_hex(text: str) -> int:
    """Parse a hex number with or without 0x prefix."""
    t = (text or "").strip().replace("_", "")
    if t.lower().startswith("0x"):
        t = t[2:]
    if not t:
        raise ValueError("empty hex number")
    return int(t, 16)


def format_word(value: int) -> str:
    return f"{value & 0xFFFFFFFF:08x}"
