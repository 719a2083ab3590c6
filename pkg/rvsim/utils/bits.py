"""Bit slicing and two's-complement helpers."""

MASK32 = 0xFFFFFFFF


def bits(word: int, hi: int, lo: int) -> int:
    """Return word[hi:lo] (inclusive)."""
    return (word >> lo) & ((1 << (hi - lo + 1)) - 1)


def sign_extend(value: int, width: int) -> int:
    """Sign-extend a `width`-bit value; result is a signed Python int."""
    value &= (1 << width) - 1
    sign_bit = 1 << (width - 1)
    return (value ^ sign_bit) - sign_bit


def to_signed(value: int) -> int:
    """Interpret a 32-bit unsigned value as signed."""
    value &= MASK32
    return value - 0x100000000 if value & 0x80000000 else value


def fits_signed(value: int, width: int) -> bool:
    return -(1 << (width - 1)) <= value < (1 << (width - 1))
