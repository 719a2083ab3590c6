"""
Two-pass RV32I assembler.

Pass 1 assigns addresses and collects labels; pass 2 encodes through
`isa.encode`, resolving labels to PC-relative offsets (branches, jumps) or
absolute values (`lui`, `%hi`/`%lo`, `.word`).

Syntax per line: `[label:]... [statement] [# comment]`. Statements are
instructions, `nop`, `li rd, imm12`, `.word v[, v...]` and `.org addr`.
"""

import logging
import re
from dataclasses import dataclass, field

from .components.register_file import ABI_NAMES
from .core.errors import AsmSyntaxError, DuplicateLabel, ImmediateOutOfRange, IsaError, UndefinedLabel
from .isa import BRANCHES, INSTRUCTIONS, DecodedInstruction, LOADS, SHIFT_IMMEDIATES, STORES, Format, encode, instruction
from .utils.bits import MASK32, sign_extend, to_signed
from .utils.text import parse_int, strip_comment

logger = logging.getLogger(__name__)

LABEL_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:")
NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
MEM_OPERAND_RE = re.compile(r"^(.*)\(\s*([A-Za-z0-9_]+)\s*\)$")
RELOC_RE = re.compile(r"^%(hi|lo|pcrel_hi|pcrel_lo)\(\s*([A-Za-z_][A-Za-z0-9_]*)\s*\)$")

REGISTERS: dict[str, int] = {f"x{i}": i for i in range(32)}
REGISTERS.update({name: i for i, name in enumerate(ABI_NAMES)})
REGISTERS["fp"] = 8

PSEUDO = ("nop", "li")


@dataclass
class _Statement:
    line: int
    addr: int
    mnemonic: str
    operands: list[str]


@dataclass
class AssembledProgram:
    origin: int
    words: list[int] = field(default_factory=list)
    symbols: dict[str, int] = field(default_factory=dict)


def _split_operands(text: str) -> list[str]:
    text = text.strip()
    if not text:
        return []
    return [op.strip() for op in text.split(",")]


class _Assembler:
    def __init__(self, source: str, origin: int):
        if origin & 0b11:
            raise AsmSyntaxError(f"origin 0x{origin:x} is not word-aligned")
        self.source = source
        self.origin = origin & MASK32
        self.symbols: dict[str, int] = {}
        self.statements: list[_Statement] = []

    # ---------- проход 1 ----------

    def first_pass(self) -> None:
        addr = self.origin
        for lineno, raw in enumerate(self.source.splitlines(), start=1):
            text = strip_comment(raw)
            while True:
                m = LABEL_RE.match(text)
                if not m:
                    break
                name = m.group(1)
                if name in self.symbols:
                    raise DuplicateLabel(f"label {name!r} is already defined", lineno)
                self.symbols[name] = addr
                text = text[m.end():].strip()
            if not text:
                continue

            parts = text.split(None, 1)
            mnemonic = parts[0].lower()
            operands = _split_operands(parts[1] if len(parts) > 1 else "")

            if mnemonic == ".org":
                if len(operands) != 1:
                    raise AsmSyntaxError(".org takes one address", lineno)
                target = self._number(operands[0], lineno)
                if target & 0b11:
                    raise AsmSyntaxError(f".org 0x{target:x} is not word-aligned", lineno)
                if target < addr:
                    raise AsmSyntaxError(f".org 0x{target:x} moves backwards from 0x{addr:x}", lineno)
                addr = target
                continue
            if mnemonic == ".word":
                if not operands:
                    raise AsmSyntaxError(".word needs at least one value", lineno)
                self.statements.append(_Statement(lineno, addr, mnemonic, operands))
                addr += 4 * len(operands)
                continue
            if mnemonic.startswith("."):
                raise AsmSyntaxError(f"unknown directive {mnemonic}", lineno)
            if mnemonic.upper() not in INSTRUCTIONS and mnemonic not in PSEUDO:
                raise AsmSyntaxError(f"unknown mnemonic {parts[0]!r}", lineno)
            self.statements.append(_Statement(lineno, addr, mnemonic, operands))
            addr += 4

    # ---------- проход 2 ----------

    def second_pass(self) -> AssembledProgram:
        program = AssembledProgram(origin=self.origin, symbols=dict(self.symbols))
        for st in self.statements:
            index = (st.addr - self.origin) // 4
            if len(program.words) < index:
                program.words.extend([0] * (index - len(program.words)))
            if st.mnemonic == ".word":
                program.words.extend(self._word_value(op, st.line) for op in st.operands)
            else:
                program.words.append(self._encode(st))
        logger.info(f"Assembled {len(program.words)} words at 0x{self.origin:08x}, {len(self.symbols)} labels")
        return program

    # ---------- операнды ----------

    def _number(self, text: str, line: int) -> int:
        try:
            return parse_int(text)
        except ValueError:
            raise AsmSyntaxError(f"expected a number, got {text!r}", line)

    def _register(self, text: str, line: int) -> int:
        reg = REGISTERS.get(text.strip().lower())
        if reg is None:
            raise AsmSyntaxError(f"unknown register {text!r}", line)
        return reg

    def _label(self, name: str, line: int) -> int:
        if name not in self.symbols:
            raise UndefinedLabel(f"undefined label {name!r}", line)
        return self.symbols[name]

    def _is_name(self, text: str) -> bool:
        return bool(NAME_RE.match(text)) and text.lower() not in REGISTERS

    def _immediate(self, text: str, st: _Statement) -> int:
        """Number or %lo/%pcrel_lo relocation for 12-bit fields."""
        text = text.strip()
        m = RELOC_RE.match(text)
        if m:
            kind, name = m.groups()
            if kind == "lo":
                return sign_extend(self._label(name, st.line) & 0xFFF, 12)
            if kind == "pcrel_lo":
                return self._pcrel_lo(name, st)
            raise AsmSyntaxError(f"%{kind} is only valid in lui/auipc", st.line)
        return self._number(text, st.line)

    def _pcrel_lo(self, name: str, st: _Statement) -> int:
        # метка указывает на auipc, чей %pcrel_hi здесь дополняется
        anchor = self._label(name, st.line)
        for other in self.statements:
            if other.addr == anchor and other.mnemonic == "auipc" and other.operands[1:]:
                target_text = other.operands[1].strip()
                m = RELOC_RE.match(target_text)
                target_name = m.group(2) if m else target_text
                offset = self._label(target_name, st.line) - anchor
                return sign_extend(offset & 0xFFF, 12)
        raise AsmSyntaxError(f"%pcrel_lo({name}) must name an auipc with a label operand", st.line)

    def _upper(self, text: str, st: _Statement) -> int:
        """20-bit upper immediate for lui/auipc; returns the full imm (imm20 << 12)."""
        text = text.strip()
        m = RELOC_RE.match(text)
        name = None
        kind = None
        if m:
            kind, name = m.groups()
        elif self._is_name(text):
            name = text
            kind = "pcrel_hi" if st.mnemonic == "auipc" else "hi"

        if name is not None:
            value = self._label(name, st.line)
            if kind == "pcrel_hi":
                value -= st.addr
            elif kind != "hi":
                raise AsmSyntaxError(f"%{kind} is not valid in {st.mnemonic}", st.line)
            imm20 = ((value + 0x800) >> 12) & 0xFFFFF
        else:
            imm20 = self._number(text, st.line)
            if not -(1 << 19) <= imm20 <= 0xFFFFF:
                raise ImmediateOutOfRange(f"line {st.line}: upper immediate {imm20} does not fit 20 bits")
            imm20 &= 0xFFFFF
        return to_signed(imm20 << 12)

    def _target(self, text: str, st: _Statement) -> int:
        """Branch/jump operand: label (PC-relative) or numeric offset."""
        text = text.strip()
        if self._is_name(text):
            return self._label(text, st.line) - st.addr
        return self._number(text, st.line)

    def _mem_operand(self, text: str, st: _Statement) -> tuple[int, int]:
        m = MEM_OPERAND_RE.match(text.strip())
        if not m:
            raise AsmSyntaxError(f"expected imm(reg), got {text!r}", st.line)
        imm_text, reg_text = m.groups()
        imm = self._immediate(imm_text, st) if imm_text.strip() else 0
        return imm, self._register(reg_text, st.line)

    def _word_value(self, text: str, line: int) -> int:
        text = text.strip()
        if self._is_name(text):
            return self._label(text, line)
        value = self._number(text, line)
        if not -(1 << 31) <= value <= MASK32:
            raise AsmSyntaxError(f".word value {text} does not fit 32 bits", line)
        return value & MASK32

    def _expect(self, st: _Statement, *counts: int) -> None:
        if len(st.operands) not in counts:
            want = " or ".join(str(c) for c in counts)
            raise AsmSyntaxError(f"{st.mnemonic} takes {want} operands, got {len(st.operands)}", st.line)

    # ---------- кодирование ----------

    def _encode(self, st: _Statement) -> int:
        try:
            return encode(self._build(st))
        except ImmediateOutOfRange as e:
            if str(e).startswith("line "):
                raise
            raise ImmediateOutOfRange(f"line {st.line}: {e}")
        except IsaError as e:
            raise AsmSyntaxError(str(e), st.line)

    def _build(self, st: _Statement) -> DecodedInstruction:
        m = st.mnemonic
        ops = st.operands

        if m == "nop":
            self._expect(st, 0)
            return instruction("ADDI")
        if m == "li":
            self._expect(st, 2)
            return instruction("ADDI", rd=self._register(ops[0], st.line), imm=self._immediate(ops[1], st))

        key = m.upper()
        spec = INSTRUCTIONS[key]

        if key in ("ECALL", "EBREAK"):
            self._expect(st, 0)
            return instruction(key)
        if key == "FENCE":
            self._expect(st, 0, 2)
            if not ops:
                return instruction(key, imm=0x0FF)
            pred, succ = (self._fence_set(op, st) for op in ops)
            return instruction(key, imm=(pred << 4) | succ)
        if spec.fmt is Format.R:
            self._expect(st, 3)
            rd, rs1, rs2 = (self._register(op, st.line) for op in ops)
            return instruction(key, rd=rd, rs1=rs1, rs2=rs2)
        if key in LOADS:
            self._expect(st, 2)
            imm, rs1 = self._mem_operand(ops[1], st)
            return instruction(key, rd=self._register(ops[0], st.line), rs1=rs1, imm=imm)
        if key == "JALR":
            self._expect(st, 1, 2, 3)
            if len(ops) == 1:
                return instruction(key, rd=1, rs1=self._register(ops[0], st.line))
            rd = self._register(ops[0], st.line)
            if len(ops) == 2:
                imm, rs1 = self._mem_operand(ops[1], st)
            else:
                rs1, imm = self._register(ops[1], st.line), self._immediate(ops[2], st)
            return instruction(key, rd=rd, rs1=rs1, imm=imm)
        if key in STORES:
            self._expect(st, 2)
            imm, rs1 = self._mem_operand(ops[1], st)
            return instruction(key, rs1=rs1, rs2=self._register(ops[0], st.line), imm=imm)
        if key in BRANCHES:
            self._expect(st, 3)
            rs1, rs2 = self._register(ops[0], st.line), self._register(ops[1], st.line)
            return instruction(key, rs1=rs1, rs2=rs2, imm=self._target(ops[2], st))
        if key == "JAL":
            self._expect(st, 1, 2)
            if len(ops) == 1:
                return instruction(key, rd=1, imm=self._target(ops[0], st))
            return instruction(key, rd=self._register(ops[0], st.line), imm=self._target(ops[1], st))
        if spec.fmt is Format.U:
            self._expect(st, 2)
            return instruction(key, rd=self._register(ops[0], st.line), imm=self._upper(ops[1], st))

        # OP-IMM
        self._expect(st, 3)
        rd, rs1 = self._register(ops[0], st.line), self._register(ops[1], st.line)
        imm = self._number(ops[2], st.line) if key in SHIFT_IMMEDIATES else self._immediate(ops[2], st)
        return instruction(key, rd=rd, rs1=rs1, imm=imm)

    def _fence_set(self, text: str, st: _Statement) -> int:
        text = text.strip().lower()
        if text == "0":
            return 0
        if not text or any(ch not in "iorw" for ch in text):
            raise AsmSyntaxError(f"bad fence set {text!r}", st.line)
        return sum(1 << (3 - "iorw".index(ch)) for ch in set(text))


def assemble(source: str, origin: int = 0) -> AssembledProgram:
    """
    Assemble source text into words starting at `origin`.

    Raises:
        UndefinedLabel, DuplicateLabel, AsmSyntaxError: with line number
        ImmediateOutOfRange: immediate or branch target does not fit
    """
    asm = _Assembler(source, origin)
    asm.first_pass()
    return asm.second_pass()
