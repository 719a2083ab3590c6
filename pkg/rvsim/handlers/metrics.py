"""`metrics` command handler."""

import sys

from ..core.context import CliConfig
from ..core.errors import EXIT_OK
from ..services.metrics import read_log, render, summarize


def metrics_cmd(config: CliConfig) -> int:
    rows = summarize(read_log(config.input))
    sys.stdout.write(render(rows, config.metrics_format))
    return EXIT_OK
