"""
Single-cycle RV32I machine.

Each step runs fetch -> decode -> control -> execute -> memory -> writeback ->
PC update, wiring the components the way the datapath interconnects them.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from ..components.alu import AluOutput, execute
from ..components.control_unit import BranchKind, ControlSignals, JumpKind, WbSource, generate_signals
from ..components.memory import Memory, MemoryMap
from ..components.program_counter import ProgramCounter
from ..components.register_file import REGISTER_COUNT, RegisterFile
from ..config import CYCLE_NS, PC_RESET
from ..harness.base import Trace
from ..isa import DecodedInstruction, decode
from ..utils.bits import MASK32
from .errors import AlignmentError, HaltedMachine, IllegalInstruction

logger = logging.getLogger(__name__)


class Status(str, Enum):
    RUNNING = "running"
    HALTED_ECALL = "halted_ecall"
    HALTED_EBREAK = "halted_ebreak"
    HALTED_ILLEGAL = "halted_illegal"
    HALTED_LIMIT = "halted_limit"
    HALTED_FAULT = "halted_fault"


ERROR_STATUSES = frozenset({Status.HALTED_ILLEGAL, Status.HALTED_FAULT})


@dataclass(frozen=True)
class MemAccess:
    kind: str  # "load" или "store"
    addr: int
    value: int


@dataclass(frozen=True)
class StepReport:
    cycle: int
    pc_before: int
    pc_after: int
    instruction: int
    mnemonic: str | None
    signals: ControlSignals | None = None
    alu: AluOutput | None = None
    rd_written: tuple[int, int] | None = None
    mem_access: MemAccess | None = None
    status: Status = Status.RUNNING


@dataclass
class RunReport:
    steps: list[StepReport] = field(default_factory=list)
    status: Status = Status.RUNNING

    @property
    def cycles(self) -> int:
        return len(self.steps)


# имя -> ширина сигналов трассы ядра
TRACE_SIGNALS: dict[str, int] = {
    "pc": 32,
    "instr": 32,
    "alu_result": 32,
    "zero": 1,
    "reg_write": 1,
    "rd": 5,
    "rd_data": 32,
    "mem_write": 1,
    "mem_addr": 32,
    "mem_data": 32,
    "halted": 1,
}


class Machine:
    """MachineState plus the step/run/reset operations."""

    def __init__(self, memory_map: MemoryMap | None = None, pc_reset: int = PC_RESET) -> None:
        self.map = memory_map or MemoryMap()
        self.pc = ProgramCounter(reset_value=pc_reset)
        self.rf = RegisterFile()
        self.mem = Memory(self.map)
        self.cycle = 0
        self.status = Status.RUNNING

    def reset(self) -> "Machine":
        """PC to reset value, registers cleared, memories kept."""
        self.pc.reset()
        self.rf.reset()
        self.cycle = 0
        self.status = Status.RUNNING
        return self

    def load_program(self, words: Iterable[int], base: int | None = None) -> "Machine":
        self.mem.load_image(self.map.imem_base if base is None else base, words)
        return self

    def _halt(self, status: Status, pc_before: int, word: int, mnemonic: str | None = None) -> StepReport:
        self.status = status
        self.cycle += 1
        logger.warning(f"Machine halted: {status.value} at pc=0x{pc_before:08x} (instr 0x{word:08x})")
        return StepReport(self.cycle, pc_before, pc_before, word, mnemonic, status=status)

    def step(self) -> StepReport:
        """
        Execute one instruction.

        Raises:
            HaltedMachine: machine is not running
        """
        if self.status is not Status.RUNNING:
            raise HaltedMachine(f"machine is {self.status.value}")

        pc = self.pc.value
        try:
            word = self.mem.fetch(pc)
        except AlignmentError:
            return self._halt(Status.HALTED_FAULT, pc, 0)
        try:
            d = decode(word)
        except IllegalInstruction:
            return self._halt(Status.HALTED_ILLEGAL, pc, word)

        sig = generate_signals(d)
        return self._execute(pc, word, d, sig)

    def _execute(self, pc: int, word: int, d: DecodedInstruction, sig: ControlSignals) -> StepReport:
        rs1_value = self.rf.read(d.rs1)
        rs2_value = self.rf.read(d.rs2)

        a = pc if sig.wb_source is WbSource.PC_PLUS_IMM_UPPER else rs1_value
        b = d.imm & MASK32 if sig.alu_src_imm else rs2_value
        alu = execute(a, b, sig.alu_control)

        next_pc = (pc + 4) & MASK32
        if sig.jump_kind is JumpKind.JAL:
            next_pc = (pc + d.imm) & MASK32
        elif sig.jump_kind is JumpKind.JALR:
            next_pc = alu.result & ~1 & MASK32
        elif sig.branch_kind is not BranchKind.NONE and _branch_taken(sig.branch_kind, alu):
            next_pc = (pc + d.imm) & MASK32

        if next_pc & 0b11:
            return self._halt(Status.HALTED_FAULT, pc, word, d.mnemonic)

        mem_access = None
        loaded = 0
        try:
            if sig.mem_read:
                loaded = self.mem.read(alu.result, sig.mem_width, sig.mem_unsigned)
                mem_access = MemAccess("load", alu.result, loaded)
            elif sig.mem_write:
                self.mem.write(alu.result, sig.mem_width, rs2_value)
                stored = rs2_value & ((1 << (8 * sig.mem_width.size)) - 1)
                mem_access = MemAccess("store", alu.result, stored)
        except AlignmentError:
            return self._halt(Status.HALTED_FAULT, pc, word, d.mnemonic)

        rd_written = None
        if sig.reg_write:
            value = _writeback(sig.wb_source, alu, loaded, pc, d.imm)
            self.rf.write(d.rd, value, write_enable=True)
            if d.rd != 0:
                rd_written = (d.rd, value)

        self.pc.advance(next_pc)
        self.cycle += 1
        if sig.halt:
            self.status = Status.HALTED_ECALL if d.mnemonic == "ECALL" else Status.HALTED_EBREAK
            logger.info(f"Machine halted: {self.status.value} at cycle {self.cycle}")

        logger.debug(f"cycle {self.cycle}: pc=0x{pc:08x} {d.mnemonic} -> 0x{next_pc:08x}")
        return StepReport(
            cycle=self.cycle,
            pc_before=pc,
            pc_after=next_pc,
            instruction=word,
            mnemonic=d.mnemonic,
            signals=sig,
            alu=alu,
            rd_written=rd_written,
            mem_access=mem_access,
            status=self.status,
        )

    def run(self, max_cycles: int, trace: Trace | None = None) -> RunReport:
        """
        Step until the machine halts or `max_cycles` steps have run
        (then status becomes halted_limit).
        """
        if max_cycles <= 0:
            raise ValueError("max_cycles must be positive")
        if trace is not None:
            for name, width in TRACE_SIGNALS.items():
                trace.declare(name, width)
            trace.sample(self.cycle * CYCLE_NS, {"pc": self.pc.value, "halted": 0})

        report = RunReport()
        while self.status is Status.RUNNING and report.cycles < max_cycles:
            step = self.step()
            report.steps.append(step)
            if trace is not None:
                record_step(trace, step, self.pc.value)

        if self.status is Status.RUNNING:
            self.status = Status.HALTED_LIMIT
            if trace is not None:
                trace.record(self.cycle * CYCLE_NS, "halted", 1)
        report.status = self.status
        logger.info(f"Run finished: {self.status.value} after {report.cycles} cycles")
        return report

    def register_values(self) -> tuple[int, ...]:
        return self.rf.snapshot()


def _branch_taken(kind: BranchKind, alu: AluOutput) -> bool:
    if kind is BranchKind.EQ:
        return alu.zero
    if kind is BranchKind.NE:
        return not alu.zero
    if kind in (BranchKind.LT, BranchKind.LTU):
        return alu.result == 1
    return alu.result == 0


def _writeback(source: WbSource, alu: AluOutput, loaded: int, pc: int, imm: int) -> int:
    if source is WbSource.MEMORY:
        return loaded
    if source is WbSource.PC_PLUS_4:
        return (pc + 4) & MASK32
    if source is WbSource.IMM_UPPER:
        return imm & MASK32
    return alu.result


def step_values(step: StepReport, pc_now: int) -> dict[str, int]:
    """Core signal values after one step; signals the step did not drive are left out."""
    values = {
        "pc": pc_now,
        "instr": step.instruction,
        "halted": int(step.status is not Status.RUNNING),
    }
    if step.alu is not None:
        values["alu_result"] = step.alu.result
        values["zero"] = int(step.alu.zero)
    values["reg_write"] = int(step.rd_written is not None)
    if step.rd_written is not None:
        values["rd"], values["rd_data"] = step.rd_written
    is_store = step.mem_access is not None and step.mem_access.kind == "store"
    values["mem_write"] = int(is_store)
    if step.mem_access is not None:
        values["mem_addr"] = step.mem_access.addr
        values["mem_data"] = step.mem_access.value
    return values


def record_step(trace: Trace, step: StepReport, pc_now: int) -> None:
    """Sample the core signals of one executed step at its cycle time."""
    trace.sample(step.cycle * CYCLE_NS, step_values(step, pc_now))


def format_state(machine: Machine) -> str:
    """State dump: pc, x0..x31, cycle, status; one `key=value` per line."""
    lines = [f"pc={machine.pc.value:08x}"]
    regs = machine.register_values()
    lines.extend(f"x{i}={regs[i]:08x}" for i in range(REGISTER_COUNT))
    lines.append(f"cycle={machine.cycle}")
    lines.append(f"status={machine.status.value}")
    return "\n".join(lines) + "\n"
