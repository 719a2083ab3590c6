"""
Control unit: maps a decoded instruction to the datapath control bundle.

Stateless; the machine owns sequencing (fetch/decode then execute happen in
one step of the single-cycle core).
"""

from dataclasses import dataclass, field
from enum import IntEnum

from ..isa import BRANCHES, DecodedInstruction, FUNCT7_ALT, LOADS, STORES, SHIFT_IMMEDIATES, Format
from .alu import ADD, SUB, ALU_SLT, ALU_SLTU, ALU_SRL, AluControl


class MemWidth(IntEnum):
    BYTE = 0
    HALF = 1
    WORD = 2

    @property
    def size(self) -> int:
        return 1 << self.value


class BranchKind(IntEnum):
    NONE = 0
    EQ = 1
    NE = 2
    LT = 3
    GE = 4
    LTU = 5
    GEU = 6


class JumpKind(IntEnum):
    NONE = 0
    JAL = 1
    JALR = 2


class WbSource(IntEnum):
    ALU = 0
    MEMORY = 1
    PC_PLUS_4 = 2
    IMM_UPPER = 3
    PC_PLUS_IMM_UPPER = 4


@dataclass(frozen=True)
class ControlSignals:
    reg_write: bool = False
    alu_src_imm: bool = False
    mem_read: bool = False
    mem_write: bool = False
    mem_width: MemWidth = MemWidth.WORD
    mem_unsigned: bool = False
    branch_kind: BranchKind = BranchKind.NONE
    jump_kind: JumpKind = JumpKind.NONE
    wb_source: WbSource = WbSource.ALU
    alu_control: AluControl = field(default=ADD)
    halt: bool = False

    def __post_init__(self) -> None:
        if self.mem_read and self.mem_write:
            raise ValueError("mem_read and mem_write are mutually exclusive")
        if self.jump_kind is not JumpKind.NONE and self.branch_kind is not BranchKind.NONE:
            raise ValueError("a jump cannot also be a branch")
        if self.wb_source is WbSource.MEMORY and not self.mem_read:
            raise ValueError("memory writeback requires mem_read")


NOP = ControlSignals()

_WIDTHS = {
    "LB": (MemWidth.BYTE, False),
    "LH": (MemWidth.HALF, False),
    "LW": (MemWidth.WORD, False),
    "LBU": (MemWidth.BYTE, True),
    "LHU": (MemWidth.HALF, True),
    "SB": (MemWidth.BYTE, False),
    "SH": (MemWidth.HALF, False),
    "SW": (MemWidth.WORD, False),
}

# BEQ/BNE сравнивают через флаг нуля rs1 - rs2, остальные через SLT/SLTU
_BRANCHES = {
    "BEQ": (BranchKind.EQ, SUB),
    "BNE": (BranchKind.NE, SUB),
    "BLT": (BranchKind.LT, AluControl(ALU_SLT)),
    "BGE": (BranchKind.GE, AluControl(ALU_SLT)),
    "BLTU": (BranchKind.LTU, AluControl(ALU_SLTU)),
    "BGEU": (BranchKind.GEU, AluControl(ALU_SLTU)),
}


def generate_signals(d: DecodedInstruction) -> ControlSignals:
    """Total over the 40 RV32I base mnemonics."""
    m = d.mnemonic

    if m == "LUI":
        return ControlSignals(reg_write=True, alu_src_imm=True, wb_source=WbSource.IMM_UPPER)
    if m == "AUIPC":
        return ControlSignals(reg_write=True, alu_src_imm=True, wb_source=WbSource.PC_PLUS_IMM_UPPER)
    if m == "JAL":
        return ControlSignals(reg_write=True, jump_kind=JumpKind.JAL, wb_source=WbSource.PC_PLUS_4)
    if m == "JALR":
        return ControlSignals(
            reg_write=True, alu_src_imm=True, jump_kind=JumpKind.JALR, wb_source=WbSource.PC_PLUS_4
        )
    if m in BRANCHES:
        kind, ctl = _BRANCHES[m]
        return ControlSignals(branch_kind=kind, alu_control=ctl)
    if m in LOADS:
        width, unsigned = _WIDTHS[m]
        return ControlSignals(
            reg_write=True,
            alu_src_imm=True,
            mem_read=True,
            mem_width=width,
            mem_unsigned=unsigned,
            wb_source=WbSource.MEMORY,
        )
    if m in STORES:
        width, _ = _WIDTHS[m]
        return ControlSignals(alu_src_imm=True, mem_write=True, mem_width=width)
    if m in ("ECALL", "EBREAK"):
        return ControlSignals(halt=True)
    if m == "FENCE":
        return NOP

    # OP-IMM и OP: АЛУ получает funct3 напрямую
    if d.fmt is Format.R:
        alt = d.funct3 in (0b000, ALU_SRL) and d.funct7 == FUNCT7_ALT
        return ControlSignals(reg_write=True, alu_control=AluControl(d.funct3, alt))
    # бит 30 иммедиата выбирает только SRAI; у ADDI это часть иммедиата
    alt = m in SHIFT_IMMEDIATES and d.funct7 == FUNCT7_ALT
    return ControlSignals(reg_write=True, alu_src_imm=True, alu_control=AluControl(d.funct3, alt))
