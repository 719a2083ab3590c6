"""
RV32I base instruction set: encoding table, decoder, encoder, disassembler.

All field positions follow the RV32I manual:

    31      25 24  20 19  15 14  12 11   7 6      0
    [ funct7 ][ rs2 ][ rs1 ][funct3][  rd ][ opcode ]
"""

from dataclasses import dataclass
from enum import Enum

from .core.errors import IllegalInstruction, ImmediateOutOfRange, IndexOutOfRange, IsaError
from .utils.bits import MASK32, bits, fits_signed, sign_extend, to_signed


class Format(str, Enum):
    R = "R"
    I = "I"
    S = "S"
    B = "B"
    U = "U"
    J = "J"


# Основные opcode
OP_LUI = 0b0110111
OP_AUIPC = 0b0010111
OP_JAL = 0b1101111
OP_JALR = 0b1100111
OP_BRANCH = 0b1100011
OP_LOAD = 0b0000011
OP_STORE = 0b0100011
OP_IMM = 0b0010011
OP_REG = 0b0110011
OP_MISC_MEM = 0b0001111
OP_SYSTEM = 0b1110011

FUNCT7_ALT = 0b0100000


@dataclass(frozen=True)
class InstructionSpec:
    """One row of the RV32I encoding table."""
    mnemonic: str
    fmt: Format
    opcode: int
    funct3: int | None = None
    funct7: int | None = None
    # фиксированный imm[11:0] для ECALL/EBREAK
    system_imm: int | None = None


_TABLE: tuple[InstructionSpec, ...] = (
    InstructionSpec("LUI", Format.U, OP_LUI),
    InstructionSpec("AUIPC", Format.U, OP_AUIPC),
    InstructionSpec("JAL", Format.J, OP_JAL),
    InstructionSpec("JALR", Format.I, OP_JALR, 0b000),
    InstructionSpec("BEQ", Format.B, OP_BRANCH, 0b000),
    InstructionSpec("BNE", Format.B, OP_BRANCH, 0b001),
    InstructionSpec("BLT", Format.B, OP_BRANCH, 0b100),
    InstructionSpec("BGE", Format.B, OP_BRANCH, 0b101),
    InstructionSpec("BLTU", Format.B, OP_BRANCH, 0b110),
    InstructionSpec("BGEU", Format.B, OP_BRANCH, 0b111),
    InstructionSpec("LB", Format.I, OP_LOAD, 0b000),
    InstructionSpec("LH", Format.I, OP_LOAD, 0b001),
    InstructionSpec("LW", Format.I, OP_LOAD, 0b010),
    InstructionSpec("LBU", Format.I, OP_LOAD, 0b100),
    InstructionSpec("LHU", Format.I, OP_LOAD, 0b101),
    InstructionSpec("SB", Format.S, OP_STORE, 0b000),
    InstructionSpec("SH", Format.S, OP_STORE, 0b001),
    InstructionSpec("SW", Format.S, OP_STORE, 0b010),
    InstructionSpec("ADDI", Format.I, OP_IMM, 0b000),
    InstructionSpec("SLTI", Format.I, OP_IMM, 0b010),
    InstructionSpec("SLTIU", Format.I, OP_IMM, 0b011),
    InstructionSpec("XORI", Format.I, OP_IMM, 0b100),
    InstructionSpec("ORI", Format.I, OP_IMM, 0b110),
    InstructionSpec("ANDI", Format.I, OP_IMM, 0b111),
    InstructionSpec("SLLI", Format.I, OP_IMM, 0b001, 0b0000000),
    InstructionSpec("SRLI", Format.I, OP_IMM, 0b101, 0b0000000),
    InstructionSpec("SRAI", Format.I, OP_IMM, 0b101, FUNCT7_ALT),
    InstructionSpec("ADD", Format.R, OP_REG, 0b000, 0b0000000),
    InstructionSpec("SUB", Format.R, OP_REG, 0b000, FUNCT7_ALT),
    InstructionSpec("SLL", Format.R, OP_REG, 0b001, 0b0000000),
    InstructionSpec("SLT", Format.R, OP_REG, 0b010, 0b0000000),
    InstructionSpec("SLTU", Format.R, OP_REG, 0b011, 0b0000000),
    InstructionSpec("XOR", Format.R, OP_REG, 0b100, 0b0000000),
    InstructionSpec("SRL", Format.R, OP_REG, 0b101, 0b0000000),
    InstructionSpec("SRA", Format.R, OP_REG, 0b101, FUNCT7_ALT),
    InstructionSpec("OR", Format.R, OP_REG, 0b110, 0b0000000),
    InstructionSpec("AND", Format.R, OP_REG, 0b111, 0b0000000),
    InstructionSpec("FENCE", Format.I, OP_MISC_MEM),
    InstructionSpec("ECALL", Format.I, OP_SYSTEM, 0b000, system_imm=0),
    InstructionSpec("EBREAK", Format.I, OP_SYSTEM, 0b000, system_imm=1),
)

INSTRUCTIONS: dict[str, InstructionSpec] = {spec.mnemonic: spec for spec in _TABLE}
MNEMONICS: tuple[str, ...] = tuple(spec.mnemonic for spec in _TABLE)

# (opcode, funct3, funct7), None - любое значение; SYSTEM разбирается отдельно
_DECODE_KEYS: dict[tuple[int, int | None, int | None], InstructionSpec] = {
    (spec.opcode, spec.funct3, spec.funct7): spec for spec in _TABLE if spec.opcode != OP_SYSTEM
}

SHIFT_IMMEDIATES = frozenset({"SLLI", "SRLI", "SRAI"})
LOADS = frozenset({"LB", "LH", "LW", "LBU", "LHU"})
STORES = frozenset({"SB", "SH", "SW"})
BRANCHES = frozenset({"BEQ", "BNE", "BLT", "BGE", "BLTU", "BGEU"})


@dataclass(frozen=True)
class DecodedInstruction:
    """Fields of one instruction word; fields unused by the format are 0."""
    mnemonic: str
    fmt: Format
    opcode: int
    rd: int = 0
    funct3: int = 0
    rs1: int = 0
    rs2: int = 0
    funct7: int = 0
    imm: int = 0


def extract_immediate(word: int, fmt: Format) -> int:
    """
    Assemble and sign-extend the immediate of a word for the given format.

    Args:
        word: 32-bit instruction word
        fmt: any format except R

    Returns:
        Signed 32-bit immediate
    """
    fmt = Format(fmt)
    if fmt is Format.I:
        return sign_extend(bits(word, 31, 20), 12)
    if fmt is Format.S:
        return sign_extend((bits(word, 31, 25) << 5) | bits(word, 11, 7), 12)
    if fmt is Format.B:
        value = (
            (bits(word, 31, 31) << 12)
            | (bits(word, 7, 7) << 11)
            | (bits(word, 30, 25) << 5)
            | (bits(word, 11, 8) << 1)
        )
        return sign_extend(value, 13)
    if fmt is Format.U:
        return to_signed(word & 0xFFFFF000)
    if fmt is Format.J:
        value = (
            (bits(word, 31, 31) << 20)
            | (bits(word, 19, 12) << 12)
            | (bits(word, 20, 20) << 11)
            | (bits(word, 30, 21) << 1)
        )
        return sign_extend(value, 21)
    raise IsaError("R-format instructions carry no immediate")


def _check_word(word: int) -> int:
    if not isinstance(word, int) or word < 0 or word > MASK32:
        raise IsaError(f"instruction word must be an unsigned 32-bit value, got {word!r}")
    return word


def _lookup(word: int) -> InstructionSpec:
    opcode = bits(word, 6, 0)
    funct3 = bits(word, 14, 12)
    funct7 = bits(word, 31, 25)

    if opcode == OP_SYSTEM:
        if funct3 != 0 or bits(word, 11, 7) != 0 or bits(word, 19, 15) != 0:
            raise IllegalInstruction(word)
        imm = bits(word, 31, 20)
        if imm == 0:
            return INSTRUCTIONS["ECALL"]
        if imm == 1:
            return INSTRUCTIONS["EBREAK"]
        raise IllegalInstruction(word)

    for key in ((opcode, funct3, funct7), (opcode, funct3, None), (opcode, None, None)):
        spec = _DECODE_KEYS.get(key)
        if spec is not None:
            return spec
    raise IllegalInstruction(word)


def decode(word: int) -> DecodedInstruction:
    """
    Decode a 32-bit word into its RV32I fields.

    Raises:
        IllegalInstruction: no base encoding matches (includes the zero word)
    """
    word = _check_word(word)
    spec = _lookup(word)

    opcode = bits(word, 6, 0)
    rd = bits(word, 11, 7)
    funct3 = bits(word, 14, 12)
    rs1 = bits(word, 19, 15)
    rs2 = bits(word, 24, 20)
    funct7 = bits(word, 31, 25)

    if spec.fmt is Format.R:
        return DecodedInstruction(spec.mnemonic, spec.fmt, opcode, rd=rd, funct3=funct3, rs1=rs1, rs2=rs2, funct7=funct7)
    if spec.fmt is Format.I:
        if spec.mnemonic in SHIFT_IMMEDIATES:
            return DecodedInstruction(spec.mnemonic, spec.fmt, opcode, rd=rd, funct3=funct3, rs1=rs1, funct7=funct7, imm=rs2)
        if spec.system_imm is not None:
            return DecodedInstruction(spec.mnemonic, spec.fmt, opcode, imm=spec.system_imm)
        return DecodedInstruction(
            spec.mnemonic, spec.fmt, opcode, rd=rd, funct3=funct3, rs1=rs1, imm=extract_immediate(word, Format.I)
        )
    if spec.fmt in (Format.S, Format.B):
        return DecodedInstruction(
            spec.mnemonic, spec.fmt, opcode, funct3=funct3, rs1=rs1, rs2=rs2, imm=extract_immediate(word, spec.fmt)
        )
    # U и J
    return DecodedInstruction(spec.mnemonic, spec.fmt, opcode, rd=rd, imm=extract_immediate(word, spec.fmt))


def instruction(mnemonic: str, rd: int = 0, rs1: int = 0, rs2: int = 0, imm: int = 0, funct3: int | None = None) -> DecodedInstruction:
    """
    Build the canonical DecodedInstruction for a mnemonic.

    Fields the format does not use are dropped; U immediates are normalized
    to signed form.
    """
    key = mnemonic.upper()
    spec = INSTRUCTIONS.get(key)
    if spec is None:
        raise IsaError(f"unknown mnemonic: {mnemonic}")

    f3 = spec.funct3 if spec.funct3 is not None else (funct3 or 0)
    f7 = spec.funct7 or 0

    if spec.fmt is Format.R:
        return DecodedInstruction(key, spec.fmt, spec.opcode, rd=rd, funct3=f3, rs1=rs1, rs2=rs2, funct7=f7)
    if spec.fmt is Format.I:
        if spec.system_imm is not None:
            return DecodedInstruction(key, spec.fmt, spec.opcode, imm=spec.system_imm)
        if key in SHIFT_IMMEDIATES:
            return DecodedInstruction(key, spec.fmt, spec.opcode, rd=rd, funct3=f3, rs1=rs1, funct7=f7, imm=imm)
        return DecodedInstruction(key, spec.fmt, spec.opcode, rd=rd, funct3=f3, rs1=rs1, imm=imm)
    if spec.fmt in (Format.S, Format.B):
        return DecodedInstruction(key, spec.fmt, spec.opcode, funct3=f3, rs1=rs1, rs2=rs2, imm=imm)
    if spec.fmt is Format.U:
        return DecodedInstruction(key, spec.fmt, spec.opcode, rd=rd, imm=to_signed(imm) if 0 <= imm <= MASK32 else imm)
    return DecodedInstruction(key, spec.fmt, spec.opcode, rd=rd, imm=imm)


def _check_register(name: str, index: int) -> None:
    if not 0 <= index <= 31:
        raise IndexOutOfRange(f"{name}={index} is outside x0..x31")


def _out_of_range(d: DecodedInstruction, detail: str) -> ImmediateOutOfRange:
    return ImmediateOutOfRange(f"{d.mnemonic} immediate {d.imm} {detail}")


def encode(d: DecodedInstruction) -> int:
    """
    Encode decoded fields back into a 32-bit word (inverse of decode).

    Raises:
        ImmediateOutOfRange: imm does not fit the format
        IndexOutOfRange: register field outside 0..31
    """
    spec = INSTRUCTIONS.get(d.mnemonic)
    if spec is None:
        raise IsaError(f"unknown mnemonic: {d.mnemonic}")
    for name in ("rd", "rs1", "rs2"):
        _check_register(name, getattr(d, name))

    funct3 = spec.funct3 if spec.funct3 is not None else d.funct3
    if not 0 <= funct3 <= 0b111:
        raise IsaError(f"funct3={funct3} does not fit 3 bits")
    imm = d.imm
    base = spec.opcode

    if spec.fmt is Format.R:
        return (spec.funct7 << 25) | (d.rs2 << 20) | (d.rs1 << 15) | (funct3 << 12) | (d.rd << 7) | base

    if spec.fmt is Format.I:
        if spec.system_imm is not None:
            return (spec.system_imm << 20) | base
        if d.mnemonic in SHIFT_IMMEDIATES:
            if not 0 <= imm <= 31:
                raise _out_of_range(d, "is not a shift amount 0..31")
            return (spec.funct7 << 25) | (imm << 20) | (d.rs1 << 15) | (funct3 << 12) | (d.rd << 7) | base
        if d.mnemonic == "FENCE" and 0 <= imm <= 0xFFF:
            imm12 = imm
        elif fits_signed(imm, 12):
            imm12 = imm & 0xFFF
        else:
            raise _out_of_range(d, "does not fit 12 signed bits")
        return (imm12 << 20) | (d.rs1 << 15) | (funct3 << 12) | (d.rd << 7) | base

    if spec.fmt is Format.S:
        if not fits_signed(imm, 12):
            raise _out_of_range(d, "does not fit 12 signed bits")
        imm12 = imm & 0xFFF
        return (bits(imm12, 11, 5) << 25) | (d.rs2 << 20) | (d.rs1 << 15) | (funct3 << 12) | (bits(imm12, 4, 0) << 7) | base

    if spec.fmt is Format.B:
        if not fits_signed(imm, 13) or imm & 1:
            raise _out_of_range(d, "is not an even 13-bit signed offset")
        imm13 = imm & 0x1FFF
        return (
            (bits(imm13, 12, 12) << 31)
            | (bits(imm13, 10, 5) << 25)
            | (d.rs2 << 20)
            | (d.rs1 << 15)
            | (funct3 << 12)
            | (bits(imm13, 4, 1) << 8)
            | (bits(imm13, 11, 11) << 7)
            | base
        )

    if spec.fmt is Format.U:
        if not -(1 << 31) <= imm <= MASK32 or imm & 0xFFF:
            raise _out_of_range(d, "is not a 32-bit value with bits 11..0 clear")
        return (imm & 0xFFFFF000) | (d.rd << 7) | base

    # J
    if not fits_signed(imm, 21) or imm & 1:
        raise _out_of_range(d, "is not an even 21-bit signed offset")
    imm21 = imm & 0x1FFFFF
    return (
        (bits(imm21, 20, 20) << 31)
        | (bits(imm21, 10, 1) << 21)
        | (bits(imm21, 11, 11) << 20)
        | (bits(imm21, 19, 12) << 12)
        | (d.rd << 7)
        | base
    )


_FENCE_SETS = "iorw"


def _fence_set(value: int) -> str:
    text = "".join(ch for i, ch in enumerate(_FENCE_SETS) if value & (1 << (3 - i)))
    return text or "0"


def disassemble(word: int) -> str:
    """Render a word in assembler syntax; illegal words become `.word`."""
    try:
        d = decode(word)
    except IllegalInstruction:
        return f".word 0x{word:08x}"

    m = d.mnemonic.lower()
    if d.fmt is Format.R:
        return f"{m} x{d.rd}, x{d.rs1}, x{d.rs2}"
    if d.mnemonic in ("ECALL", "EBREAK"):
        return m
    if d.mnemonic == "FENCE":
        imm12 = d.imm & 0xFFF
        if d.rd or d.rs1 or d.funct3 or imm12 >> 8:
            return f".word 0x{word:08x}"
        return f"fence {_fence_set(imm12 >> 4)}, {_fence_set(imm12 & 0xF)}"
    if d.mnemonic in LOADS or d.mnemonic == "JALR":
        return f"{m} x{d.rd}, {d.imm}(x{d.rs1})"
    if d.fmt is Format.I:
        return f"{m} x{d.rd}, x{d.rs1}, {d.imm}"
    if d.fmt is Format.S:
        return f"{m} x{d.rs2}, {d.imm}(x{d.rs1})"
    if d.fmt is Format.B:
        return f"{m} x{d.rs1}, x{d.rs2}, {d.imm}"
    if d.fmt is Format.U:
        return f"{m} x{d.rd}, 0x{(d.imm & MASK32) >> 12:x}"
    return f"{m} x{d.rd}, {d.imm}"
