"""32-bit program counter."""

from dataclasses import dataclass

from ..config import PC_RESET
from ..core.errors import MisalignedTarget
from ..utils.bits import MASK32


@dataclass
class ProgramCounter:
    """Holds the address of the next instruction; resets to `reset_value`."""

    reset_value: int = PC_RESET
    value: int | None = None

    def __post_init__(self) -> None:
        self.reset_value &= MASK32
        if self.value is None:
            self.value = self.reset_value
        self.value &= MASK32

    def reset(self) -> "ProgramCounter":
        self.value = self.reset_value
        return self

    def advance(self, next_value: int) -> "ProgramCounter":
        """
        Load the next address.

        Raises:
            MisalignedTarget: next address has bits 1..0 set
        """
        next_value &= MASK32
        if next_value & 0b11:
            raise MisalignedTarget(f"pc target 0x{next_value:08x} is not word-aligned")
        self.value = next_value
        return self

    def increment(self) -> "ProgramCounter":
        """Sequential advance: value + 4, wrapping at 2^32."""
        return self.advance(self.value + 4)
