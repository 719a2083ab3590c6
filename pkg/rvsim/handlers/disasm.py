"""`disasm` command handler."""

import sys

from ..config import IMEM_BASE
from ..core.context import CliConfig
from ..core.errors import EXIT_OK
from ..isa import disassemble
from ..services.images import read_image
from ..utils.text import format_word


def disasm_cmd(config: CliConfig) -> int:
    """Print `<addr>: <word>  <text>` for every word of an image."""
    default_origin = IMEM_BASE if config.origin is None else config.origin
    lines = []
    for segment in read_image(config.input):
        base = default_origin if segment.base is None else segment.base
        for i, word in enumerate(segment.words):
            lines.append(f"{format_word(base + 4 * i)}: {format_word(word)}  {disassemble(word)}")
    sys.stdout.write("".join(f"{line}\n" for line in lines))
    return EXIT_OK
