"""
Component test benches.

A bench wraps one component (the device under test), accepts scheduled
actions and exposes the component's ports as named signals. Stimulus
argument values arrive as text; numbers are hex.
"""

import logging
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any

from ..assembler import REGISTERS, assemble
from ..components.alu import AluControl, execute
from ..components.control_unit import NOP, ControlSignals, MemWidth, generate_signals
from ..components.memory import Memory, MemoryMap
from ..components.program_counter import ProgramCounter
from ..components.register_file import RegisterFile
from ..core.errors import HarnessError, ScenarioFormatError
from ..core.machine import TRACE_SIGNALS, Machine, step_values
from ..isa import decode
from ..utils.bits import MASK32
from ..utils.text import parse_hex

logger = logging.getLogger(__name__)

_WIDTH_NAMES = {"byte": MemWidth.BYTE, "half": MemWidth.HALF, "word": MemWidth.WORD}


def _hex(args: dict[str, Any], key: str, default: int | None = None) -> int:
    raw = args.get(key)
    if raw is None:
        if default is None:
            raise ScenarioFormatError(f"missing argument {key}=")
        return default
    try:
        return parse_hex(str(raw))
    except ValueError:
        raise ScenarioFormatError(f"argument {key}={raw!r} is not a hex number")


def _register(args: dict[str, Any]) -> int:
    name = str(args.get("reg", "")).lower()
    if name not in REGISTERS:
        raise ScenarioFormatError(f"reg= must name a register (x0..x31 or an ABI name), got {name!r}")
    return REGISTERS[name]


def _width(args: dict[str, Any]) -> MemWidth:
    name = str(args.get("width", "word")).lower()
    if name not in _WIDTH_NAMES:
        raise ScenarioFormatError(f"width must be byte, half or word, got {name!r}")
    return _WIDTH_NAMES[name]


class Bench(ABC):
    """Base class for component benches."""

    target: str = ""
    signals: dict[str, int] = {}

    def __init__(self, base_dir: Path | None = None) -> None:
        self.base_dir = base_dir

    def apply(self, action: str, args: dict[str, Any]) -> None:
        handler = getattr(self, f"do_{action}", None)
        if handler is None:
            raise ScenarioFormatError(f"{self.target} bench has no action {action!r}")
        logger.debug(f"{self.target}: {action} {args}")
        handler(args)

    @abstractmethod
    def values(self) -> dict[str, int]:
        """Current value of every signal."""
        pass


class PcBench(Bench):
    target = "pc"
    signals = {"pc_out": 32}

    def __init__(self, base_dir: Path | None = None) -> None:
        super().__init__(base_dir)
        self.pc = ProgramCounter()

    def do_reset(self, args: dict[str, Any]) -> None:
        self.pc.reset()

    def do_clock(self, args: dict[str, Any]) -> None:
        if "next" in args:
            self.pc.advance(_hex(args, "next"))
        else:
            self.pc.increment()

    def values(self) -> dict[str, int]:
        return {"pc_out": self.pc.value}


class RegfileBench(Bench):
    """Writes are staged on the write port and commit on `clock`."""

    target = "regfile"
    signals = {
        "read_addr1": 5,
        "read_addr2": 5,
        "read_data1": 32,
        "read_data2": 32,
        "write_addr": 5,
        "write_data": 32,
        "write_enable": 1,
    }

    def __init__(self, base_dir: Path | None = None) -> None:
        super().__init__(base_dir)
        self.rf = RegisterFile()
        self.ports = {name: 0 for name in ("read_addr1", "read_addr2", "write_addr", "write_data", "write_enable")}

    def do_reset(self, args: dict[str, Any]) -> None:
        self.rf.reset()

    def do_read(self, args: dict[str, Any]) -> None:
        self.ports["read_addr1"] = _hex(args, "addr1", self.ports["read_addr1"])
        self.ports["read_addr2"] = _hex(args, "addr2", self.ports["read_addr2"])

    def do_write(self, args: dict[str, Any]) -> None:
        self.ports["write_addr"] = _hex(args, "addr")
        self.ports["write_data"] = _hex(args, "data") & MASK32
        self.ports["write_enable"] = _hex(args, "enable", 1) & 1

    def do_clock(self, args: dict[str, Any]) -> None:
        p = self.ports
        self.rf.write(p["write_addr"], p["write_data"], write_enable=bool(p["write_enable"]))

    def values(self) -> dict[str, int]:
        return {
            **self.ports,
            "read_data1": self.rf.read(self.ports["read_addr1"]),
            "read_data2": self.rf.read(self.ports["read_addr2"]),
        }


class AluBench(Bench):
    target = "alu"
    signals = {"a": 32, "b": 32, "funct3": 3, "alt": 1, "result": 32, "zero": 1}

    def __init__(self, base_dir: Path | None = None) -> None:
        super().__init__(base_dir)
        self.inputs = {"a": 0, "b": 0, "funct3": 0, "alt": 0}

    def do_drive(self, args: dict[str, Any]) -> None:
        for name in self.inputs:
            if name in args:
                self.inputs[name] = _hex(args, name) & ((1 << self.signals[name]) - 1)

    def values(self) -> dict[str, int]:
        out = execute(self.inputs["a"], self.inputs["b"], AluControl(self.inputs["funct3"], bool(self.inputs["alt"])))
        return {**self.inputs, "result": out.result, "zero": int(out.zero)}


class ControlBench(Bench):
    """Enum-valued signals are shown as their integer codes."""

    target = "control"
    signals = {
        "instr": 32,
        "reg_write": 1,
        "alu_src_imm": 1,
        "mem_read": 1,
        "mem_write": 1,
        "mem_width": 2,
        "mem_unsigned": 1,
        "branch_kind": 3,
        "jump_kind": 2,
        "wb_source": 3,
        "alu_funct3": 3,
        "alu_alt": 1,
        "halt": 1,
    }

    def __init__(self, base_dir: Path | None = None) -> None:
        super().__init__(base_dir)
        self.word = 0
        self.sig: ControlSignals = NOP

    def do_issue(self, args: dict[str, Any]) -> None:
        if "asm" in args:
            program = assemble(str(args["asm"]))
            if len(program.words) != 1:
                raise ScenarioFormatError(f"asm={args['asm']!r} must be exactly one instruction")
            self.word = program.words[0]
        else:
            self.word = _hex(args, "word")
        self.sig = generate_signals(decode(self.word))

    def values(self) -> dict[str, int]:
        s = self.sig
        return {
            "instr": self.word,
            "reg_write": int(s.reg_write),
            "alu_src_imm": int(s.alu_src_imm),
            "mem_read": int(s.mem_read),
            "mem_write": int(s.mem_write),
            "mem_width": int(s.mem_width),
            "mem_unsigned": int(s.mem_unsigned),
            "branch_kind": int(s.branch_kind),
            "jump_kind": int(s.jump_kind),
            "wb_source": int(s.wb_source),
            "alu_funct3": s.alu_control.funct3,
            "alu_alt": int(s.alu_control.alt),
            "halt": int(s.halt),
        }


class ImemBench(Bench):
    """Addresses are offsets from the instruction window base."""

    target = "imem"
    signals = {"addr": 32, "instr": 32}

    def __init__(self, base_dir: Path | None = None) -> None:
        super().__init__(base_dir)
        self.mem = Memory(MemoryMap())
        self.addr = 0
        self.instr = 0

    def do_load(self, args: dict[str, Any]) -> None:
        self.mem.load_image(self.mem.map.imem_base + _hex(args, "offset"), [_hex(args, "word")])

    def do_fetch(self, args: dict[str, Any]) -> None:
        self.addr = _hex(args, "offset")
        self.instr = self.mem.fetch(self.mem.map.imem_base + self.addr)

    def values(self) -> dict[str, int]:
        return {"addr": self.addr, "instr": self.instr}


class DmemBench(Bench):
    """`data_out` shows the read-back of the addressed location after every access."""

    target = "dmem"
    signals = {"addr": 32, "data_in": 32, "mem_write": 1, "data_out": 32}

    def __init__(self, base_dir: Path | None = None) -> None:
        super().__init__(base_dir)
        self.mem = Memory(MemoryMap())
        self.state = {name: 0 for name in self.signals}

    def do_write(self, args: dict[str, Any]) -> None:
        addr, data, width = _hex(args, "addr"), _hex(args, "data") & MASK32, _width(args)
        self.mem.write(addr, width, data)
        self.state.update(addr=addr & MASK32, data_in=data, mem_write=1)
        self.state["data_out"] = self.mem.read(addr, width)

    def do_read(self, args: dict[str, Any]) -> None:
        addr, width = _hex(args, "addr"), _width(args)
        unsigned = _hex(args, "signed", 0) == 0
        self.state.update(addr=addr & MASK32, mem_write=0)
        self.state["data_out"] = self.mem.read(addr, width, unsigned)

    def values(self) -> dict[str, int]:
        return dict(self.state)


class ProcessorBench(Bench):
    """
    The whole single-cycle core. `load program=<file.s>` assembles a file
    (relative to the scenario file) into instruction memory and resets.
    """

    target = "processor"
    signals = {
        **TRACE_SIGNALS,
        "reg_index": 5,
        "reg_data": 32,
        "peek_addr": 32,
        "peek_data": 32,
    }

    def __init__(self, base_dir: Path | None = None) -> None:
        super().__init__(base_dir)
        self.machine = Machine()
        self.state = {name: 0 for name in self.signals}
        self.state["pc"] = self.machine.pc.value

    def do_load(self, args: dict[str, Any]) -> None:
        name = args.get("program")
        if not name:
            raise ScenarioFormatError("load needs program=<file.s>")
        path = Path(name) if self.base_dir is None else self.base_dir / name
        try:
            source = path.read_text(encoding="utf-8")
        except OSError as e:
            raise HarnessError(f"cannot read program {path}: {e}")
        program = assemble(source, origin=self.machine.map.imem_base)
        self.machine.load_program(program.words).reset()
        self.state["pc"] = self.machine.pc.value

    def do_reset(self, args: dict[str, Any]) -> None:
        self.machine.reset()
        self.state.update(pc=self.machine.pc.value, halted=0)

    def do_setreg(self, args: dict[str, Any]) -> None:
        self.machine.rf.write(_register(args), _hex(args, "value"))

    def do_poke(self, args: dict[str, Any]) -> None:
        self.machine.mem.write(_hex(args, "addr"), _width(args), _hex(args, "data"))

    def do_step(self, args: dict[str, Any]) -> None:
        report = self.machine.step()
        self.state.update(step_values(report, self.machine.pc.value))

    def do_readreg(self, args: dict[str, Any]) -> None:
        index = _register(args)
        self.state.update(reg_index=index, reg_data=self.machine.rf.read(index))

    def do_peek(self, args: dict[str, Any]) -> None:
        addr = _hex(args, "addr")
        self.state.update(peek_addr=addr & MASK32, peek_data=self.machine.mem.read(addr, _width(args)))

    def values(self) -> dict[str, int]:
        return dict(self.state)


BENCHES: dict[str, type[Bench]] = {
    cls.target: cls
    for cls in (PcBench, RegfileBench, AluBench, ControlBench, ImemBench, DmemBench, ProcessorBench)
}
