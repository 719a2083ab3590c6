"""`run` command handler."""

import sys

from ..core.context import CliConfig
from ..core.errors import EXIT_FAILURE, EXIT_OK
from ..core.machine import ERROR_STATUSES, Machine, format_state
from ..harness.base import Trace
from ..harness.vcd import write_trace
from ..services.images import read_image


def run_cmd(config: CliConfig) -> int:
    """
    Load an image, run until halt or the cycle budget, optionally dump state
    and write the core trace. Exit 1 when the machine stops on an illegal
    instruction or a fault.
    """
    memory_map = config.memory_map()
    machine = Machine(memory_map, pc_reset=config.effective_pc_reset)
    for segment in read_image(config.input):
        machine.load_program(segment.words, base=segment.base)

    trace = Trace() if config.trace else None
    report = machine.run(config.effective_max_cycles, trace=trace)

    if trace is not None:
        write_trace(trace, config.trace, scope="core")

    if config.dump:
        sys.stdout.write(format_state(machine))
    else:
        sys.stdout.write(f"cycle={machine.cycle}\nstatus={report.status.value}\n")

    return EXIT_FAILURE if report.status in ERROR_STATUSES else EXIT_OK
