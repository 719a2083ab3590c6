"""
Instruction memory (preloaded, read-only to the core) and data memory
(byte-addressable RAM). Little-endian. Addresses outside the data window
behave as read-only zeros.
"""

import logging
from dataclasses import dataclass
from typing import Iterable

from ..config import DMEM_BASE, DMEM_SIZE, IMEM_BASE, IMEM_SIZE
from ..core.errors import ConfigurationError, ImageOverflow, MisalignedAccess, MisalignedFetch
from ..utils.bits import MASK32, sign_extend
from .control_unit import MemWidth

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MemoryMap:
    imem_base: int = IMEM_BASE
    imem_size: int = IMEM_SIZE
    dmem_base: int = DMEM_BASE
    dmem_size: int = DMEM_SIZE

    def __post_init__(self) -> None:
        for name in ("imem_base", "imem_size", "dmem_base", "dmem_size"):
            value = getattr(self, name)
            if value < 0 or value & 0b11:
                raise ConfigurationError(f"{name}=0x{value:x} must be a non-negative multiple of 4")
        if self.imem_base + self.imem_size > 1 << 32 or self.dmem_base + self.dmem_size > 1 << 32:
            raise ConfigurationError("memory windows must lie inside the 32-bit address space")
        if self.imem_base < self.dmem_base + self.dmem_size and self.dmem_base < self.imem_base + self.imem_size:
            raise ConfigurationError(
                f"imem [0x{self.imem_base:08x}, +0x{self.imem_size:x}) overlaps "
                f"dmem [0x{self.dmem_base:08x}, +0x{self.dmem_size:x})"
            )

    def in_imem(self, addr: int, size: int = 4) -> bool:
        return self.imem_base <= addr and addr + size <= self.imem_base + self.imem_size

    def in_dmem(self, addr: int, size: int = 4) -> bool:
        return self.dmem_base <= addr and addr + size <= self.dmem_base + self.dmem_size


def _check_alignment(addr: int, size: int) -> None:
    if addr % size:
        raise MisalignedAccess(f"{size}-byte access at 0x{addr:08x} is not naturally aligned")


class Memory:
    """Backing store for both windows of a MemoryMap."""

    def __init__(self, memory_map: MemoryMap | None = None) -> None:
        self.map = memory_map or MemoryMap()
        self._imem = bytearray(self.map.imem_size)
        self._dmem = bytearray(self.map.dmem_size)

    def fetch(self, addr: int) -> int:
        """
        Read one instruction word.

        Returns 0 for addresses outside the instruction window or never written.

        Raises:
            MisalignedFetch: addr not word-aligned
        """
        addr &= MASK32
        if addr & 0b11:
            raise MisalignedFetch(f"instruction fetch at 0x{addr:08x} is not word-aligned")
        if not self.map.in_imem(addr):
            return 0
        offset = addr - self.map.imem_base
        return int.from_bytes(self._imem[offset:offset + 4], "little")

    def read(self, addr: int, width: MemWidth = MemWidth.WORD, unsigned: bool = True) -> int:
        """
        Load from the data window; zero- or sign-extended to 32 bits.

        Raises:
            MisalignedAccess: addr not aligned to width
        """
        addr &= MASK32
        size = MemWidth(width).size
        _check_alignment(addr, size)
        if not self.map.in_dmem(addr, size):
            return 0
        offset = addr - self.map.dmem_base
        value = int.from_bytes(self._dmem[offset:offset + size], "little")
        if not unsigned:
            value = sign_extend(value, size * 8) & MASK32
        return value

    def write(self, addr: int, width: MemWidth, value: int) -> "Memory":
        """
        Store the low `width` bytes of value; ignored outside the data window.

        Raises:
            MisalignedAccess: addr not aligned to width
        """
        addr &= MASK32
        size = MemWidth(width).size
        _check_alignment(addr, size)
        if not self.map.in_dmem(addr, size):
            logger.warning(f"Ignored {size}-byte write to read-only address 0x{addr:08x}")
            return self
        offset = addr - self.map.dmem_base
        self._dmem[offset:offset + size] = (value & ((1 << (size * 8)) - 1)).to_bytes(size, "little")
        return self

    def load_image(self, base: int, words: Iterable[int]) -> "Memory":
        """
        Store consecutive words at base, base+4, ... in whichever window holds base.

        Raises:
            MisalignedAccess: base not word-aligned
            ImageOverflow: base outside both windows or words run past the window end
        """
        words = list(words)
        if not words:
            return self
        _check_alignment(base, 4)
        if self.map.in_imem(base, 0) and base < self.map.imem_base + self.map.imem_size:
            store, window_base = self._imem, self.map.imem_base
        elif self.map.in_dmem(base, 0) and base < self.map.dmem_base + self.map.dmem_size:
            store, window_base = self._dmem, self.map.dmem_base
        else:
            raise ImageOverflow(f"image base 0x{base:08x} lies in no memory window")

        offset = base - window_base
        end = offset + 4 * len(words)
        if end > len(store):
            raise ImageOverflow(
                f"{len(words)} words at 0x{base:08x} overflow the window by {end - len(store)} bytes"
            )
        for i, word in enumerate(words):
            store[offset + 4 * i:offset + 4 * i + 4] = (word & MASK32).to_bytes(4, "little")
        logger.debug(f"Loaded {len(words)} words at 0x{base:08x}")
        return self

    def snapshot(self) -> tuple[bytes, bytes]:
        return bytes(self._imem), bytes(self._dmem)
