import random

import pytest

from rvsim.assembler import assemble
from rvsim.components.memory import MemoryMap
from rvsim.core.machine import Machine

IMEM_BASE = 0x40000000
DMEM_BASE = 0x80000000


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0x5EED)


@pytest.fixture
def memory_map() -> MemoryMap:
    return MemoryMap(imem_base=IMEM_BASE, imem_size=0x10000, dmem_base=DMEM_BASE, dmem_size=0x10000)


@pytest.fixture
def make_machine(memory_map):
    """Assemble source at the instruction window base and load it into a fresh machine."""

    def _make(source: str = "") -> Machine:
        machine = Machine(memory_map, pc_reset=IMEM_BASE)
        if source:
            machine.load_program(assemble(source, origin=IMEM_BASE).words)
        return machine

    return _make
