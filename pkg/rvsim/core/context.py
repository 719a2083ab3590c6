"""CliConfig: one parsed invocation of the command line."""

import argparse
from dataclasses import dataclass, fields

from ..components.memory import MemoryMap
from ..config import DMEM_BASE, DMEM_SIZE, IMEM_BASE, IMEM_SIZE, MAX_CYCLES, PC_RESET


@dataclass
class CliConfig:
    """
    Parsed command-line invocation.

    `input` is the positional argument of the subcommand: the source or
    image path, the trial log, or the bench selector. Unset overrides
    fall back to rvsim.config.
    """

    command: str
    input: str
    output: str | None = None
    origin: int | None = None
    image_format: str = "hex"
    pc_reset: int | None = None
    imem_base: int | None = None
    imem_size: int | None = None
    dmem_base: int | None = None
    dmem_size: int | None = None
    max_cycles: int | None = None
    trace: str | None = None
    dump: bool = False
    trace_dir: str | None = None
    scenarios_dir: str | None = None
    metrics_format: str = "table"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        """Build from an argparse namespace; options a subcommand lacks keep their defaults."""
        values = {f.name: getattr(args, f.name) for f in fields(cls) if hasattr(args, f.name)}
        return cls(**values)

    def memory_map(self) -> MemoryMap:
        return MemoryMap(
            imem_base=IMEM_BASE if self.imem_base is None else self.imem_base,
            imem_size=IMEM_SIZE if self.imem_size is None else self.imem_size,
            dmem_base=DMEM_BASE if self.dmem_base is None else self.dmem_base,
            dmem_size=DMEM_SIZE if self.dmem_size is None else self.dmem_size,
        )

    @property
    def effective_pc_reset(self) -> int:
        return PC_RESET if self.pc_reset is None else self.pc_reset

    @property
    def effective_max_cycles(self) -> int:
        return MAX_CYCLES if self.max_cycles is None else self.max_cycles

    def to_argv(self) -> list[str]:
        """Argument vector that parses back to an equal CliConfig."""
        argv = [self.command, self.input]

        def add(flag: str, value: object | None, hex_value: bool = False) -> None:
            if value is None:
                return
            argv.extend([flag, f"0x{value:x}" if hex_value else str(value)])

        if self.command == "assemble":
            add("-o", self.output)
            add("--origin", self.origin, hex_value=True)
            add("--format", self.image_format)
        elif self.command == "run":
            add("--pc-reset", self.pc_reset, hex_value=True)
            add("--imem-base", self.imem_base, hex_value=True)
            add("--imem-size", self.imem_size, hex_value=True)
            add("--dmem-base", self.dmem_base, hex_value=True)
            add("--dmem-size", self.dmem_size, hex_value=True)
            add("--max-cycles", self.max_cycles)
            add("--trace", self.trace)
            if self.dump:
                argv.append("--dump")
        elif self.command == "bench":
            add("--trace-dir", self.trace_dir)
            add("--scenarios", self.scenarios_dir)
        elif self.command == "metrics":
            add("--format", self.metrics_format)
        elif self.command == "disasm":
            add("--origin", self.origin, hex_value=True)
        return argv
