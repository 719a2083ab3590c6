"""
Independent RV32I oracles for the test suite.

Written straight from the ISA manual's encoding table and instruction
semantics; imports nothing from rvsim so that a shared mistake cannot
hide in both sides of a comparison.
"""

from dataclasses import dataclass, field

M32 = 0xFFFFFFFF

# (mnemonic, opcode, funct3, funct7) -- None значит "не входит в ключ"
ENCODINGS = [
    ("LUI", 0x37, None, None),
    ("AUIPC", 0x17, None, None),
    ("JAL", 0x6F, None, None),
    ("JALR", 0x67, 0, None),
    ("BEQ", 0x63, 0, None),
    ("BNE", 0x63, 1, None),
    ("BLT", 0x63, 4, None),
    ("BGE", 0x63, 5, None),
    ("BLTU", 0x63, 6, None),
    ("BGEU", 0x63, 7, None),
    ("LB", 0x03, 0, None),
    ("LH", 0x03, 1, None),
    ("LW", 0x03, 2, None),
    ("LBU", 0x03, 4, None),
    ("LHU", 0x03, 5, None),
    ("SB", 0x23, 0, None),
    ("SH", 0x23, 1, None),
    ("SW", 0x23, 2, None),
    ("ADDI", 0x13, 0, None),
    ("SLTI", 0x13, 2, None),
    ("SLTIU", 0x13, 3, None),
    ("XORI", 0x13, 4, None),
    ("ORI", 0x13, 6, None),
    ("ANDI", 0x13, 7, None),
    ("SLLI", 0x13, 1, 0x00),
    ("SRLI", 0x13, 5, 0x00),
    ("SRAI", 0x13, 5, 0x20),
    ("ADD", 0x33, 0, 0x00),
    ("SUB", 0x33, 0, 0x20),
    ("SLL", 0x33, 1, 0x00),
    ("SLT", 0x33, 2, 0x00),
    ("SLTU", 0x33, 3, 0x00),
    ("XOR", 0x33, 4, 0x00),
    ("SRL", 0x33, 5, 0x00),
    ("SRA", 0x33, 5, 0x20),
    ("OR", 0x33, 6, 0x00),
    ("AND", 0x33, 7, 0x00),
    ("FENCE", 0x0F, None, None),
    ("ECALL", 0x73, None, None),
    ("EBREAK", 0x73, None, None),
]

FORMATS = {
    "LUI": "U", "AUIPC": "U", "JAL": "J",
    "BEQ": "B", "BNE": "B", "BLT": "B", "BGE": "B", "BLTU": "B", "BGEU": "B",
    "SB": "S", "SH": "S", "SW": "S",
    "ADD": "R", "SUB": "R", "SLL": "R", "SLT": "R", "SLTU": "R",
    "XOR": "R", "SRL": "R", "SRA": "R", "OR": "R", "AND": "R",
}


def fmt_of(mnemonic: str) -> str:
    return FORMATS.get(mnemonic, "I")


def _sext(value: int, width: int) -> int:
    if value & (1 << (width - 1)):
        return value - (1 << width)
    return value


def _s32(value: int) -> int:
    return _sext(value & M32, 32)


def ref_immediate(word: int, fmt: str) -> int:
    if fmt == "I":
        return _sext(word >> 20, 12)
    if fmt == "S":
        return _sext(((word >> 25) << 5) | ((word >> 7) & 0x1F), 12)
    if fmt == "B":
        value = (
            ((word >> 31) & 1) << 12
            | ((word >> 7) & 1) << 11
            | ((word >> 25) & 0x3F) << 5
            | ((word >> 8) & 0xF) << 1
        )
        return _sext(value, 13)
    if fmt == "U":
        return _s32(word & 0xFFFFF000)
    if fmt == "J":
        value = (
            ((word >> 31) & 1) << 20
            | ((word >> 12) & 0xFF) << 12
            | ((word >> 20) & 1) << 11
            | ((word >> 21) & 0x3FF) << 1
        )
        return _sext(value, 21)
    raise ValueError(fmt)


def ref_decode(word: int) -> dict | None:
    """Field dict for a legal word, None for an illegal one."""
    opcode = word & 0x7F
    rd = (word >> 7) & 0x1F
    funct3 = (word >> 12) & 0x7
    rs1 = (word >> 15) & 0x1F
    rs2 = (word >> 20) & 0x1F
    funct7 = word >> 25

    if opcode == 0x73:
        if rd or rs1 or funct3:
            return None
        if word >> 20 == 0:
            return {"mnemonic": "ECALL", "rd": 0, "rs1": 0, "rs2": 0, "imm": 0}
        if word >> 20 == 1:
            return {"mnemonic": "EBREAK", "rd": 0, "rs1": 0, "rs2": 0, "imm": 1}
        return None

    for mnemonic, op, f3, f7 in ENCODINGS:
        if op != opcode or (f3 is not None and f3 != funct3) or (f7 is not None and f7 != funct7):
            continue
        fmt = fmt_of(mnemonic)
        fields = {"mnemonic": mnemonic, "rd": 0, "rs1": 0, "rs2": 0, "imm": 0}
        if fmt in ("R", "I", "U", "J"):
            fields["rd"] = rd
        if fmt in ("R", "I", "S", "B"):
            fields["rs1"] = rs1
        if fmt in ("R", "S", "B"):
            fields["rs2"] = rs2
        if mnemonic in ("SLLI", "SRLI", "SRAI"):
            fields["imm"] = rs2
        elif fmt != "R":
            fields["imm"] = ref_immediate(word, fmt)
        return fields
    return None


@dataclass
class RefMachine:
    """Straight-from-the-manual interpreter; memory is a sparse byte map."""
    pc: int
    regs: list[int] = field(default_factory=lambda: [0] * 32)
    mem: dict[int, int] = field(default_factory=dict)
    halted: str | None = None

    def load_words(self, base: int, words: list[int]) -> None:
        for i, w in enumerate(words):
            for b in range(4):
                self.mem[base + 4 * i + b] = (w >> (8 * b)) & 0xFF

    def _read(self, addr: int, size: int) -> int:
        return sum(self.mem.get((addr + b) & M32, 0) << (8 * b) for b in range(size))

    def _write(self, addr: int, size: int, value: int) -> None:
        for b in range(size):
            self.mem[(addr + b) & M32] = (value >> (8 * b)) & 0xFF

    def _set(self, rd: int, value: int) -> None:
        if rd:
            self.regs[rd] = value & M32

    def step(self) -> None:
        word = self._read(self.pc, 4)
        d = ref_decode(word)
        if d is None:
            self.halted = "illegal"
            return
        m, rd, imm = d["mnemonic"], d["rd"], d["imm"]
        a, b = self.regs[d["rs1"]], self.regs[d["rs2"]]
        sa, sb = _s32(a), _s32(b)
        next_pc = (self.pc + 4) & M32

        if m == "LUI":
            self._set(rd, imm)
        elif m == "AUIPC":
            self._set(rd, self.pc + imm)
        elif m == "JAL":
            self._set(rd, self.pc + 4)
            next_pc = (self.pc + imm) & M32
        elif m == "JALR":
            target = (a + imm) & M32 & ~1
            self._set(rd, self.pc + 4)
            next_pc = target
        elif m in ("BEQ", "BNE", "BLT", "BGE", "BLTU", "BGEU"):
            taken = {
                "BEQ": a == b, "BNE": a != b, "BLT": sa < sb,
                "BGE": sa >= sb, "BLTU": a < b, "BGEU": a >= b,
            }[m]
            if taken:
                next_pc = (self.pc + imm) & M32
        elif m in ("LB", "LH", "LW", "LBU", "LHU"):
            size = {"LB": 1, "LBU": 1, "LH": 2, "LHU": 2, "LW": 4}[m]
            value = self._read((a + imm) & M32, size)
            if m in ("LB", "LH"):
                value = _sext(value, 8 * size)
            self._set(rd, value)
        elif m in ("SB", "SH", "SW"):
            size = {"SB": 1, "SH": 2, "SW": 4}[m]
            self._write((a + imm) & M32, size, b)
        elif m in ("ECALL", "EBREAK"):
            self.halted = m.lower()
        elif m == "FENCE":
            pass
        else:
            operand = imm & M32 if fmt_of(m) == "I" else b
            s_operand = _s32(operand)
            shamt = operand & 0x1F
            op = m[:-1] if fmt_of(m) == "I" and m not in ("SLTIU",) else m
            if m == "SLTIU":
                op = "SLTU"
            result = {
                "ADD": lambda: a + operand,
                "SUB": lambda: a - operand,
                "SLL": lambda: a << shamt,
                "SLT": lambda: int(sa < s_operand),
                "SLTU": lambda: int(a < operand),
                "XOR": lambda: a ^ operand,
                "SRL": lambda: a >> shamt,
                "SRA": lambda: sa >> shamt,
                "OR": lambda: a | operand,
                "AND": lambda: a & operand,
            }[op]()
            self._set(rd, result)

        self.pc = next_pc

    def run(self, max_steps: int) -> None:
        for _ in range(max_steps):
            if self.halted:
                return
            self.step()
