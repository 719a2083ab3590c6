"""`assemble` command handler."""

import logging
import sys
from pathlib import Path

from ..assembler import assemble
from ..config import IMEM_BASE
from ..core.context import CliConfig
from ..core.errors import EXIT_OK, ConfigurationError
from ..services.images import format_binary_image, format_hex_image

logger = logging.getLogger(__name__)


def assemble_cmd(config: CliConfig) -> int:
    """Assemble a source file into a hex image (stdout without -o) or a binary image."""
    source = Path(config.input).read_text(encoding="utf-8")
    origin = IMEM_BASE if config.origin is None else config.origin
    program = assemble(source, origin=origin)

    if config.image_format == "bin":
        if not config.output:
            raise ConfigurationError("--format bin needs -o <file>")
        Path(config.output).write_bytes(format_binary_image(program.words))
    else:
        text = format_hex_image(program.words, origin=program.origin)
        if config.output:
            Path(config.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)

    if config.output:
        logger.info(f"Wrote {len(program.words)} words to {config.output}")
    return EXIT_OK
