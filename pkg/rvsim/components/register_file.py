"""32 x 32-bit register file with x0 hardwired to zero."""

from ..core.errors import IndexOutOfRange
from ..utils.bits import MASK32

REGISTER_COUNT = 32

ABI_NAMES: tuple[str, ...] = (
    "zero", "ra", "sp", "gp", "tp", "t0", "t1", "t2",
    "s0", "s1", "a0", "a1", "a2", "a3", "a4", "a5",
    "a6", "a7", "s2", "s3", "s4", "s5", "s6", "s7",
    "s8", "s9", "s10", "s11", "t3", "t4", "t5", "t6",
)


def _check_index(index: int) -> None:
    if not 0 <= index < REGISTER_COUNT:
        raise IndexOutOfRange(f"register index {index} is outside 0..31")


class RegisterFile:
    """Two read ports, one write port with enable, synchronous reset."""

    def __init__(self) -> None:
        self._regs: list[int] = [0] * REGISTER_COUNT

    def read(self, index: int) -> int:
        _check_index(index)
        return self._regs[index]

    def write(self, index: int, data: int, write_enable: bool = True) -> "RegisterFile":
        _check_index(index)
        if write_enable and index != 0:
            self._regs[index] = data & MASK32
        return self

    def reset(self) -> "RegisterFile":
        self._regs = [0] * REGISTER_COUNT
        return self

    def snapshot(self) -> tuple[int, ...]:
        return tuple(self._regs)
