"""Combinational ALU: result and zero flag from a, b and funct3 (+ alt bit)."""

from dataclasses import dataclass

from ..utils.bits import MASK32, to_signed

# Селекторы funct3
ALU_ADD = 0b000
ALU_SLL = 0b001
ALU_SLT = 0b010
ALU_SLTU = 0b011
ALU_XOR = 0b100
ALU_SRL = 0b101
ALU_OR = 0b110
ALU_AND = 0b111


@dataclass(frozen=True)
class AluControl:
    """funct3 plus the instruction bit 30 that selects SUB / SRA."""
    funct3: int
    alt: bool = False


@dataclass(frozen=True)
class AluOutput:
    result: int
    zero: bool


ADD = AluControl(ALU_ADD)
SUB = AluControl(ALU_ADD, alt=True)


def execute(a: int, b: int, ctl: AluControl) -> AluOutput:
    """Compute one ALU operation; all arithmetic wraps mod 2^32."""
    a &= MASK32
    b &= MASK32
    shamt = b & 0x1F
    f3 = ctl.funct3 & 0b111

    if f3 == ALU_ADD:
        result = a - b if ctl.alt else a + b
    elif f3 == ALU_SLL:
        result = a << shamt
    elif f3 == ALU_SLT:
        result = int(to_signed(a) < to_signed(b))
    elif f3 == ALU_SLTU:
        result = int(a < b)
    elif f3 == ALU_XOR:
        result = a ^ b
    elif f3 == ALU_SRL:
        result = to_signed(a) >> shamt if ctl.alt else a >> shamt
    elif f3 == ALU_OR:
        result = a | b
    else:
        result = a & b

    result &= MASK32
    return AluOutput(result=result, zero=result == 0)
